#pragma once

// Exact (non-search) section computations: chord of a line with the
// cross-polytope, the chopped-off pyramid cut by a far hyperplane and the
// matching hyperplane-section and slab volumes, central line sections of the
// regular simplex, and the 2D isosceles-triangle chord helper.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "crosssec/core.hpp"

namespace crosssec {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

namespace detail {

// f(s) = ||base + s dir||_1 is piecewise linear and convex.  Solve f = level
// on the rising side starting from the breakpoint index at the minimum,
// walking over any flat bottom first.  `bp`/`fv` are sorted breakpoints and
// their f-values; `edge_slope` is the absolute slope of the unbounded rays.
inline double crossing(const std::vector<double>& bp, const std::vector<double>& fv,
                       std::size_t imin, double level, double edge_slope, bool rightward) {
    const std::ptrdiff_t step = rightward ? 1 : -1;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(imin);
    const std::ptrdiff_t last = rightward ? static_cast<std::ptrdiff_t>(bp.size()) - 1 : 0;
    while (j != last && fv[static_cast<std::size_t>(j + step)] <= level) j += step;
    if (j == last) {
        const double off = (level - fv[static_cast<std::size_t>(j)]) / edge_slope;
        return bp[static_cast<std::size_t>(j)] + (rightward ? off : -off);
    }
    const std::size_t a = static_cast<std::size_t>(j), b = static_cast<std::size_t>(j + step);
    return bp[a] + (level - fv[a]) * (bp[b] - bp[a]) / (fv[b] - fv[a]);
}

}  // namespace detail

/// Length of the intersection of a line with the cross-polytope in R^n.
///
/// The l1 norm along the line is a piecewise-linear convex function with
/// breakpoints where a coordinate vanishes; the chord endpoints are found by
/// solving f = 1 exactly on the correct linear piece of each monotone side.
/// An empty intersection gives 0; a touching line (min f = 1 with a
/// single-point bottom) gives 0 with the tangent flag set.  A flat bottom at
/// level 1 (the line runs inside a face) yields the full positive length of
/// that face chord.
inline SectionResult line_section_length(const LineSpec& line, int n) {
    check_dimension(n, 2);
    if (line.dim() != n || static_cast<int>(line.dir.size()) != n)
        throw std::invalid_argument("line_section_length: dimension mismatch");
    require_unit(line.dir, "line_section_length");

    std::vector<double> bp;
    bp.reserve(line.dir.size());
    double edge_slope = 0.0;
    for (std::size_t i = 0; i < line.dir.size(); ++i) {
        edge_slope += std::abs(line.dir[i]);
        if (std::abs(line.dir[i]) > 1e-15) bp.push_back(-line.base[i] / line.dir[i]);
    }
    std::sort(bp.begin(), bp.end());

    std::vector<double> fv(bp.size());
    double fmin = std::numeric_limits<double>::infinity();
    std::size_t imin = 0;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        fv[i] = l1_norm(add(line.base, scaled(line.dir, bp[i])));
        if (fv[i] < fmin) {
            fmin = fv[i];
            imin = i;
        }
    }

    SectionResult res;
    res.method = Method::ExactGeometry;
    res.witness = Witness{line};
    if (fmin > 1.0 + kExactTol) return res;  // line misses the body

    const double level = std::max(1.0, fmin);
    const double s_right = detail::crossing(bp, fv, imin, level, edge_slope, true);
    const double s_left = detail::crossing(bp, fv, imin, level, edge_slope, false);
    const double len = s_right - s_left;

    if (fmin >= 1.0 - kExactTol && len < 1e-9) {
        res.tangent = true;
        return res;
    }
    res.value = std::max(0.0, len);
    return res;
}

/// The part of the cross-polytope cut off by a far hyperplane, stored in the
/// canonical frame where the separated vertex is e_1: coordinates are
/// permuted and sign-flipped so normal[0] = max_i |a_i| and all entries are
/// nonnegative.  The applied transform is recorded so witnesses map back.
struct ChoppedPyramid {
    int dim = 0;
    Vec normal;  // canonical: nonincreasing would be overkill; only [0] is pinned
    double offset = 0.0;
    std::vector<int> perm;  // canonical index i came from original perm[i]
    Vec signs;              // sign applied to original coordinate perm[i]
    bool empty = false;     // normal[0] <= offset: nothing is cut off
};

inline ChoppedPyramid make_chopped_pyramid(const HyperplaneSpec& h, int n) {
    check_dimension(n, 3);
    if (h.dim() != n) throw std::invalid_argument("make_chopped_pyramid: dimension mismatch");
    require_unit(h.normal, "make_chopped_pyramid");
    if (h.offset <= kInvSqrt2)
        throw std::domain_error(
            "make_chopped_pyramid: offset must exceed 1/sqrt(2); closer hyperplanes separate "
            "more than one vertex and have no single-pyramid cap");
    if (h.offset > 1.0 + kExactTol)
        throw std::invalid_argument("make_chopped_pyramid: offset must be at most 1");

    ChoppedPyramid c;
    c.dim = n;
    c.offset = h.offset;
    c.perm.resize(static_cast<std::size_t>(n));
    std::iota(c.perm.begin(), c.perm.end(), 0);
    std::stable_sort(c.perm.begin(), c.perm.end(), [&](int i, int j) {
        return std::abs(h.normal[static_cast<std::size_t>(i)]) >
               std::abs(h.normal[static_cast<std::size_t>(j)]);
    });
    c.normal.resize(static_cast<std::size_t>(n));
    c.signs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double v = h.normal[static_cast<std::size_t>(c.perm[static_cast<std::size_t>(i)])];
        c.signs[static_cast<std::size_t>(i)] = (v < 0.0) ? -1.0 : 1.0;
        c.normal[static_cast<std::size_t>(i)] = std::abs(v);
    }
    c.empty = c.normal[0] <= c.offset;
    return c;
}

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// prod_{i>=2} (a_1^2 - a_i^2) for a canonical pyramid, with a conditioning
// guard: the product vanishes when a trailing coordinate ties with a_1, which
// is impossible for a valid far hyperplane but can be fed in numerically.
inline double leading_gap_product(const ChoppedPyramid& c, const char* who) {
    const double a1 = c.normal[0];
    double prod = 1.0;
    for (int i = 1; i < c.dim; ++i) {
        const double ai = c.normal[static_cast<std::size_t>(i)];
        const double gap = a1 * a1 - ai * ai;
        if (gap <= kExactTol)
            throw std::domain_error(std::string(who) +
                                    ": ill-conditioned normal (leading coordinates tie)");
        prod *= gap;
    }
    return prod;
}

}  // namespace detail

/// Volume of the chopped-off pyramid:
/// 2^(n-1) (a_1 - t)^n a_1^(n-2) / (n! prod_{i>=2}(a_1^2 - a_i^2)).
inline double chopped_volume(const ChoppedPyramid& c) {
    if (c.empty) return 0.0;
    const int n = c.dim;
    const double a1 = c.normal[0], t = c.offset;
    if (a1 - t <= kExactTol) return 0.0;  // grazing cut
    const double prod = detail::leading_gap_product(c, "chopped_volume");
    return std::pow(2.0, n - 1) * std::pow(a1 - t, n) * std::pow(a1, n - 2) /
           (detail::factorial(n) * prod);
}

/// (n-1)-volume of the hyperplane section when the hyperplane is far enough
/// from the origin to separate a single vertex (offset > 1/sqrt(2)):
/// 2^(n-1) a_1^(n-2) (a_1 - t)^(n-1) / ((n-1)! prod_{i>=2}(a_1^2 - a_i^2)).
inline SectionResult hyperplane_section_volume(const HyperplaneSpec& h, int n) {
    ChoppedPyramid c = make_chopped_pyramid(h, n);
    SectionResult res;
    res.method = Method::ExactGeometry;
    res.witness = Witness{h};
    if (c.empty) {
        // A touch at a vertex is a nonempty section of measure zero.
        res.tangent = std::abs(c.normal[0] - c.offset) <= kExactTol;
        return res;
    }
    const double a1 = c.normal[0], t = c.offset;
    const double prod = detail::leading_gap_product(c, "hyperplane_section_volume");
    res.value = std::pow(2.0, n - 1) * std::pow(a1, n - 2) * std::pow(a1 - t, n - 1) /
                (detail::factorial(n - 1) * prod);
    return res;
}

/// Volume of the intersection with a symmetric slab of half-width > 1/sqrt(2):
/// the complement inside the body is two congruent chopped pyramids.
inline SectionResult slab_volume(const SlabSpec& s, int n) {
    check_dimension(n, 3);
    if (s.dim() != n) throw std::invalid_argument("slab_volume: dimension mismatch");
    require_unit(s.normal, "slab_volume");
    if (s.half_width <= kInvSqrt2)
        throw std::domain_error("slab_volume: half-width must exceed 1/sqrt(2)");
    SectionResult res;
    res.method = Method::ExactGeometry;
    res.witness = Witness{HyperplaneSpec{s.normal, s.half_width}};
    const double body = cross_polytope_volume(n);
    if (s.half_width >= 1.0) {
        res.value = body;
        return res;
    }
    ChoppedPyramid c = make_chopped_pyramid(HyperplaneSpec{s.normal, s.half_width}, n);
    res.value = body - 2.0 * chopped_volume(c);
    return res;
}

/// Length of the central section of the regular simplex conv{e_1,...,e_n}
/// along a unit direction v lying in its hyperplane (sum v_i = 0):
/// (1/n) (1/max_i v_i - 1/min_i v_i).
inline double simplex_central_line_length(const Vec& v, int n) {
    check_dimension(n, 3);
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("simplex_central_line_length: dimension mismatch");
    double s = 0.0;
    for (double x : v) s += x;
    if (std::abs(s) > kExactTol)
        throw std::invalid_argument(
            "simplex_central_line_length: direction must sum to zero (lie in the simplex "
            "hyperplane)");
    require_unit(v, "simplex_central_line_length");
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return (1.0 / *mx - 1.0 / *mn) / n;
}

/// Chord of the regular simplex through its centroid, starting from a
/// boundary point x in conv{e_1,...,e_{n-1}} (x_n = 0, x_i >= 0, sum = 1).
inline double simplex_chord_through_centroid(const Vec& x, int n) {
    check_dimension(n, 3);
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("simplex_chord_through_centroid: dimension mismatch");
    if (std::abs(x[static_cast<std::size_t>(n - 1)]) > kExactTol)
        throw std::invalid_argument("simplex_chord_through_centroid: last coordinate must be 0");
    double s = 0.0, mx = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi < -kExactTol)
            throw std::invalid_argument("simplex_chord_through_centroid: negative coordinate");
        s += xi;
        mx = std::max(mx, xi);
    }
    if (std::abs(s - 1.0) > kExactTol)
        throw std::invalid_argument("simplex_chord_through_centroid: coordinates must sum to 1");
    const double denom = n * mx - 1.0;
    if (denom <= kExactTol)
        throw std::invalid_argument(
            "simplex_chord_through_centroid: chord parallel to the opposite face");
    double q = 1.0 / (n * static_cast<double>(n));  // (1/n)^2 for the last coordinate
    for (int i = 0; i < n - 1; ++i) {
        const double d = 1.0 / n - x[static_cast<std::size_t>(i)];
        q += d * d;
    }
    return (1.0 + 1.0 / denom) * std::sqrt(q);
}

/// Minimal chord of the isosceles triangle conv{-u e_1, u e_1, v e_2} with
/// endpoints on the two legs, over segments at distance t from the origin;
/// the minimum 2 (v - t) u / v is attained by the segment parallel to the
/// base.
inline double isosceles_min_chord(double u, double v, double t) {
    if (!(u > 0.0) || !(v > 0.0))
        throw std::invalid_argument("isosceles_min_chord: leg parameters must be positive");
    const double tmax = u * v / std::sqrt(u * u + v * v);
    if (t < -kExactTol || t > tmax + kExactTol)
        throw std::invalid_argument("isosceles_min_chord: t outside [0, uv/sqrt(u^2+v^2)]");
    return 2.0 * (v - t) * u / v;
}

/// Chord length of the same triangle at tilt angle theta away from
/// base-parallel; companion used to verify the minimum above.
inline double isosceles_tilted_chord(double u, double v, double t, double theta) {
    if (!(u > 0.0) || !(v > 0.0))
        throw std::invalid_argument("isosceles_tilted_chord: leg parameters must be positive");
    const double alpha = std::atan2(u, v);  // half-apex angle
    if (theta < 0.0 || theta >= M_PI / 2.0 - alpha)
        throw std::invalid_argument("isosceles_tilted_chord: theta outside [0, pi/2 - alpha)");
    const double ca = std::cos(alpha), sa = std::sin(alpha), ct = std::cos(theta);
    return 2.0 * (v * ct - t) * sa * ca / (ca * ca + ct * ct - 1.0);
}

}  // namespace crosssec
