#pragma once

// Closed-form extremal answers as functions of (n, t): maximal/minimal line
// section lengths, maximal far-hyperplane section volume, minimal wide-slab
// volume, the branch thresholds for the minimal line formula, and the
// explicit extremal configurations realizing each branch.

#include <cmath>
#include <string>
#include <utility>

#include "crosssec/core.hpp"
#include "crosssec/exact.hpp"

namespace crosssec {

/// Breakpoints T_n(k), k = 0..n-1, at which the minimizing branch of the
/// minimal line-section formula switches.  Strictly decreasing in k, with
/// T_n(0) = 1/sqrt(n).
struct ThresholdTable {
    int dim = 0;
    std::vector<double> values;

    double operator()(int k) const { return values.at(static_cast<std::size_t>(k)); }
};

inline ThresholdTable make_threshold_table(int n) {
    check_dimension(n, 2);
    ThresholdTable t;
    t.dim = n;
    t.values.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double num = std::sqrt(static_cast<double>(k + 1) * (n - k)) +
                           std::sqrt(static_cast<double>(k) * (n - k - 1));
        const double den = n * (std::sqrt(static_cast<double>(k)) +
                                std::sqrt(static_cast<double>(k + 1)));
        t.values[static_cast<std::size_t>(k)] = num / den;
    }
    return t;
}

/// The two block-centroid directions u_k = (e_1+...+e_k)/k and
/// v_k = (e_{k+1}+...+e_n)/(n-k).  Projecting the cross-polytope onto their
/// span gives the diamond conv{+-u_k, +-v_k}.
struct DiamondData {
    int dim = 0;
    int k = 0;
    Vec u;
    Vec v;
    double u_len = 0.0;  // 1/sqrt(k)
    double v_len = 0.0;  // 1/sqrt(n-k)
};

inline DiamondData make_diamond_data(int n, int k) {
    check_dimension(n, 2);
    if (k < 1 || k > n - 1) throw std::invalid_argument("make_diamond_data: k must be in [1, n-1]");
    DiamondData d;
    d.dim = n;
    d.k = k;
    d.u.assign(static_cast<std::size_t>(n), 0.0);
    d.v.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < k; ++i) d.u[static_cast<std::size_t>(i)] = 1.0 / k;
    for (int i = k; i < n; ++i) d.v[static_cast<std::size_t>(i)] = 1.0 / (n - k);
    d.u_len = 1.0 / std::sqrt(static_cast<double>(k));
    d.v_len = 1.0 / std::sqrt(static_cast<double>(n - k));
    return d;
}

/// Minimal section of the projected diamond by admissible lines at distance
/// t, for the branch that pins k coordinates: 2 (1 - t sqrt(n-k)) / sqrt(k).
/// Evaluated through the isosceles-triangle chord so the two agree exactly.
inline double min_line_branch_value(int n, int k, double t) {
    check_dimension(n, 2);
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("min_line_branch_value: k must be in [1, n-1]");
    const double tmax = 1.0 / std::sqrt(static_cast<double>(n));
    if (t < -kExactTol || t > tmax + kExactTol)
        throw std::invalid_argument("min_line_branch_value: t outside [0, 1/sqrt(n)]");
    return isosceles_min_chord(1.0 / std::sqrt(static_cast<double>(k)),
                               1.0 / std::sqrt(static_cast<double>(n - k)), t);
}

/// An extremal value with the branch of the piecewise formula it came from
/// and a configuration realizing it (when one exists).
struct ExtremalAnswer {
    double value = 0.0;
    std::string branch;
    std::optional<Witness> witness;
};

namespace detail {

// Line through two points of the coordinate (e_1, e_2) plane, embedded in R^n.
inline LineSpec planar_line(int n, double a1, double a2, double b1, double b2) {
    Vec a(static_cast<std::size_t>(n), 0.0), b(static_cast<std::size_t>(n), 0.0);
    a[0] = a1;
    a[1] = a2;
    b[0] = b1;
    b[1] = b2;
    return canonicalize_line(a, b);
}

}  // namespace detail

/// Maximal length of line sections at distance t from the origin.  The
/// maximum is realized inside a 2-dimensional coordinate plane; the witness
/// construction is branch-specific:
///  - "crossing": chord from -e_1 to a point of the edge [e_1, e_2],
///  - "corner-tilted": tilted cut of the corner at e_1,
///  - "corner-perpendicular": cut at {x_1 = t} perpendicular to e_1.
inline ExtremalAnswer max_line_length(int n, double t) {
    check_dimension(n, 2);
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("max_line_length: t outside [0, 1]");
    ExtremalAnswer ans;
    if (t <= kInvSqrt2) {
        ans.value = 2.0 / (t + std::sqrt(1.0 - t * t));
        ans.branch = "crossing";
        const double u = t * ans.value;
        ans.witness = Witness{detail::planar_line(n, 1.0 - u, u, -1.0, 0.0)};
    } else if (t <= 0.75) {
        ans.value = t - std::sqrt(t * t - 0.5);
        ans.branch = "corner-tilted";
        const double s = t / std::sqrt(2.0);
        const double c = 2.0 * s + std::sqrt(4.0 * s * s - 1.0);
        const double theta = std::asin(std::min(1.0, c / std::sqrt(2.0))) - M_PI / 4.0;
        const double r = 1.0 / (2.0 * c);
        const double alpha = r * std::cos(theta), beta = r * std::sin(theta);
        ans.witness =
            Witness{detail::planar_line(n, 1.0 - alpha, alpha, 1.0 - beta, -beta)};
    } else {
        ans.value = 2.0 - 2.0 * t;
        ans.branch = "corner-perpendicular";
        Vec base(static_cast<std::size_t>(n), 0.0);
        base[0] = t;
        ans.witness = Witness{LineSpec{std::move(base), unit_axis(n, 1)}};
    }
    return ans;
}

/// Minimal length of line sections at distance t from the origin.  Branches:
///  - "facet-perpendicular" (t below the last threshold): a chord joining two
///    opposite facets at right angles, length 2/sqrt(n);
///  - "k=<j>": the diamond chord between (1-theta)u_k + theta v_k and its
///    reflection, theta = t sqrt(n-k);
///  - "disjoint" (t > 1/sqrt(n)): lines missing the body, length 0.
inline ExtremalAnswer min_line_length(int n, double t) {
    check_dimension(n, 2);
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("min_line_length: t outside [0, 1]");
    const ThresholdTable tab = make_threshold_table(n);
    ExtremalAnswer ans;
    if (t > tab(0)) {
        ans.value = 0.0;
        ans.branch = "disjoint";
        // A witness line parallel to a facet, beyond it: foot along the facet
        // centroid direction, direction inside the facet hyperplane.
        Vec u(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
        Vec d(static_cast<std::size_t>(n), 0.0);
        d[0] = 1.0 / std::sqrt(2.0);
        d[1] = -1.0 / std::sqrt(2.0);
        ans.witness = Witness{LineSpec{scaled(u, t), std::move(d)}};
        return ans;
    }
    // Left-closed branch intervals [T_n(k), T_n(k-1)]: pick the smallest k
    // with t >= T_n(k); ties evaluate identically on both sides.
    for (int k = 1; k <= n - 1; ++k) {
        if (t >= tab(k)) {
            ans.value = min_line_branch_value(n, k, t);
            ans.branch = "k=" + std::to_string(k);
            const double theta = t * std::sqrt(static_cast<double>(n - k));
            const DiamondData dd = make_diamond_data(n, k);
            const Vec mid = scaled(dd.v, theta);
            const Vec arm = scaled(dd.u, 1.0 - theta);
            ans.witness = Witness{canonicalize_line(add(mid, arm), sub(mid, arm))};
            return ans;
        }
    }
    ans.value = 2.0 / std::sqrt(static_cast<double>(n));
    ans.branch = "facet-perpendicular";
    const double theta = t * std::sqrt(static_cast<double>(n) * (n - 1));
    Vec a(static_cast<std::size_t>(n), (1.0 - theta) / n);
    for (int i = 0; i < n - 1; ++i) a[static_cast<std::size_t>(i)] += theta / (n - 1);
    Vec b(a);
    for (double& x : b) x -= 2.0 / n;
    ans.witness = Witness{canonicalize_line(a, b)};
    return ans;
}

/// Maximal (n-1)-volume of hyperplane sections at distance t > 1/sqrt(2):
/// 2^(n-1) (1-t)^(n-1) / (n-1)!, attained exactly at coordinate normals.
inline ExtremalAnswer max_hyperplane_volume(int n, double t) {
    check_dimension(n, 3);
    if (t <= kInvSqrt2 || t > 1.0)
        throw std::domain_error("max_hyperplane_volume: t must lie in (1/sqrt(2), 1]");
    ExtremalAnswer ans;
    ans.value = std::pow(2.0 * (1.0 - t), n - 1) / detail::factorial(n - 1);
    ans.branch = "coordinate-normal";
    ans.witness = Witness{HyperplaneSpec{unit_axis(n, 0), t}};
    return ans;
}

/// Minimal volume of the intersection with a symmetric slab of half-width
/// t > 1/sqrt(2): (2^n/n!) (1 - (1-t)^n), attained exactly at coordinate
/// normals.
inline ExtremalAnswer min_slab_volume(int n, double t) {
    check_dimension(n, 3);
    if (t <= kInvSqrt2 || t > 1.0)
        throw std::domain_error("min_slab_volume: t must lie in (1/sqrt(2), 1]");
    ExtremalAnswer ans;
    ans.value = cross_polytope_volume(n) * (1.0 - std::pow(1.0 - t, n));
    ans.branch = "coordinate-normal";
    ans.witness = Witness{HyperplaneSpec{unit_axis(n, 0), t}};
    return ans;
}

/// Extremes of central line sections of the regular simplex conv{e_1..e_n}:
/// minimum 2 sqrt(2)/n (edge-parallel lines), maximum sqrt(n/(n-1)) (chords
/// through a vertex).
inline std::pair<double, double> simplex_extremes(int n) {
    check_dimension(n, 3);
    return {2.0 * std::sqrt(2.0) / n, std::sqrt(static_cast<double>(n) / (n - 1))};
}

/// Direction of an edge-parallel central line of the simplex (realizes the
/// minimum).
inline Vec simplex_min_direction(int n) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    v[0] = 1.0 / std::sqrt(2.0);
    v[1] = -1.0 / std::sqrt(2.0);
    return v;
}

/// Direction of a central line through the vertex e_n (realizes the maximum).
inline Vec simplex_max_direction(int n) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n) * (n - 1));
    Vec v(static_cast<std::size_t>(n), scale);
    v[static_cast<std::size_t>(n - 1)] = (1.0 - n) * scale;
    return v;
}

}  // namespace crosssec
