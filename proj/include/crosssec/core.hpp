#pragma once

// Core geometric types for sections of the cross-polytope (the l1 unit ball
// conv{+-e_1,...,+-e_n}): lines, hyperplanes, slabs, and the elementary
// predicates and projections everything else is built on.
//
// All values are doubles; identities are checked at 1e-12, formula-vs-geometry
// comparisons at 1e-9 unless a routine states otherwise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crosssec {

using Vec = std::vector<double>;

inline constexpr double kExactTol = 1e-12;   // exact-identity checks
inline constexpr double kFormulaTol = 1e-9;  // formula vs geometry agreement

inline void check_dimension(int n, int min_n) {
    if (n < min_n)
        throw std::invalid_argument("dimension must be at least " + std::to_string(min_n) +
                                    ", got " + std::to_string(n));
}

inline bool all_finite(const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

/// Sum of absolute coordinates; membership test for the cross-polytope is
/// l1_norm(x) <= 1.
inline double l1_norm(const Vec& x) {
    if (!all_finite(x)) throw std::invalid_argument("l1_norm: non-finite input");
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

inline Vec scaled(const Vec& a, double c) {
    Vec r(a);
    for (double& v : r) v *= c;
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n < 1e-15) throw std::invalid_argument("normalized: zero vector");
    return scaled(a, 1.0 / n);
}

inline Vec unit_axis(int n, int i, double sign = 1.0) {
    Vec e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(i)] = sign;
    return e;
}

inline void require_unit(const Vec& v, const char* what) {
    if (std::abs(norm(v) - 1.0) > kExactTol)
        throw std::invalid_argument(std::string(what) + ": vector must have unit length");
}

/// A line in R^n.  Canonical form: |dir| = 1, base is the perpendicular foot
/// of the origin (base . dir = 0), and the sign of dir is fixed so its first
/// nonzero coordinate is positive.  For a canonical line, |base| is the
/// distance of the line to the origin.
struct LineSpec {
    Vec base;
    Vec dir;

    int dim() const { return static_cast<int>(base.size()); }
    double distance_to_origin() const { return norm(base); }
};

/// Hyperplane {x : <normal, x> = offset} with |normal| = 1 and offset >= 0.
struct HyperplaneSpec {
    Vec normal;
    double offset = 0.0;

    int dim() const { return static_cast<int>(normal.size()); }
};

/// Symmetric slab {x : |<normal, x>| <= half_width} with |normal| = 1.
struct SlabSpec {
    Vec normal;
    double half_width = 0.0;

    int dim() const { return static_cast<int>(normal.size()); }
};

enum class Method { ClosedForm, ExactGeometry, MonteCarlo, Search };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed-form";
        case Method::ExactGeometry: return "exact-geometry";
        case Method::MonteCarlo: return "monte-carlo";
        case Method::Search: return "search";
    }
    return "?";
}

using Witness = std::variant<LineSpec, HyperplaneSpec>;

/// A computed section length or volume, together with how it was obtained and
/// (when available) a configuration achieving it.  `tangent` marks sections
/// that are nonempty but of measure zero (reported with value 0).
struct SectionResult {
    double value = 0.0;
    Method method = Method::ExactGeometry;
    bool tangent = false;
    std::optional<Witness> witness;
};

/// Distance from the origin of the line through two distinct points:
/// sqrt(|a|^2 |b|^2 - <a,b>^2) / |a - b|.  The Gram determinant is evaluated
/// in its factored form |a|^2 |b - (<a,b>/|a|^2) a|^2, which is the same
/// quantity without the catastrophic cancellation near lines through the
/// origin.
inline double line_distance_to_origin(const Vec& p1, const Vec& p2) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("line_distance_to_origin: size mismatch");
    if (!all_finite(p1) || !all_finite(p2))
        throw std::invalid_argument("line_distance_to_origin: non-finite input");
    const double sep = norm(sub(p1, p2));
    if (sep < kExactTol)
        throw std::invalid_argument("line_distance_to_origin: coincident points");
    const double aa = dot(p1, p1);
    if (aa == 0.0) return 0.0;  // the line passes through the origin
    const Vec rej = sub(p2, scaled(p1, dot(p1, p2) / aa));
    return std::sqrt(aa * dot(rej, rej)) / sep;
}

namespace detail {
inline Vec canonical_direction(Vec d) {
    for (double v : d) {
        if (std::abs(v) > kExactTol) {
            if (v < 0.0)
                for (double& w : d) w = -w;
            break;
        }
    }
    for (double& w : d)
        if (w == 0.0) w = 0.0;  // normalize -0
    return d;
}
}  // namespace detail

/// Canonical line through two distinct points.
inline LineSpec canonicalize_line(const Vec& p1, const Vec& p2) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("canonicalize_line: size mismatch");
    Vec diff = sub(p2, p1);
    if (norm(diff) < kExactTol)
        throw std::invalid_argument("canonicalize_line: coincident points");
    Vec dir = detail::canonical_direction(normalized(diff));
    Vec base = sub(p1, scaled(dir, dot(p1, dir)));
    for (double& v : base)
        if (std::abs(v) < 1e-15) v = std::abs(v);  // avoid -0 in output
    return LineSpec{std::move(base), std::move(dir)};
}

/// Canonical line from any base point on the line and a direction.
inline LineSpec canonicalize_line(const LineSpec& raw) {
    if (raw.base.size() != raw.dir.size())
        throw std::invalid_argument("canonicalize_line: size mismatch");
    if (norm(raw.dir) < kExactTol)
        throw std::invalid_argument("canonicalize_line: degenerate direction");
    Vec dir = detail::canonical_direction(normalized(raw.dir));
    Vec base = sub(raw.base, scaled(dir, dot(raw.base, dir)));
    for (double& v : base)
        if (std::abs(v) < 1e-15) v = std::abs(v);
    return LineSpec{std::move(base), std::move(dir)};
}

/// Orthogonal projection onto the plane spanned by the two block-centroid
/// directions: the first k coordinates are replaced by their mean, the last
/// n-k by theirs.
inline Vec project_block_means(const Vec& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("project_block_means: k must be in [1, n-1]");
    double head = 0.0, tail = 0.0;
    for (int i = 0; i < k; ++i) head += x[static_cast<std::size_t>(i)];
    for (int i = k; i < n; ++i) tail += x[static_cast<std::size_t>(i)];
    head /= k;
    tail /= (n - k);
    Vec r(x.size());
    for (int i = 0; i < k; ++i) r[static_cast<std::size_t>(i)] = head;
    for (int i = k; i < n; ++i) r[static_cast<std::size_t>(i)] = tail;
    return r;
}

/// Volume of the cross-polytope, 2^n / n!.
inline double cross_polytope_volume(int n) {
    check_dimension(n, 1);
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= 2.0 / i;
    return v;
}

}  // namespace crosssec
