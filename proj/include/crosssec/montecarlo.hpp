#pragma once

// Monte Carlo oracles: uniform sampling from the cross-polytope and from
// hyperplane slices of the enclosing Euclidean ball, with plain hit-count
// estimators.  These certify the exact formulas without sharing any code
// path with them.

#include <cmath>
#include <functional>

#include "crosssec/core.hpp"
#include "crosssec/rng.hpp"

namespace crosssec {

/// A Monte Carlo estimate: mean, standard error (sample standard deviation
/// over sqrt(samples)), and the provenance needed to reproduce it.
struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Uniform point of the cross-polytope: n exponential magnitudes plus one
/// extra, normalized by the total (a Dirichlet construction covering the
/// solid simplex), with independent random signs.
inline Vec sample_cross_polytope(int n, Rng& rng) {
    Vec g(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& x : g) {
        x = rng.exponential();
        total += x;
    }
    total += rng.exponential();
    for (double& x : g) x = rng.sign() * x / total;
    return g;
}

/// Fraction of the cross-polytope satisfying a predicate, scaled to a volume
/// by 2^n/n!.  The always-true predicate returns the body volume exactly,
/// with zero standard error.
inline McEstimate mc_body_fraction(const std::function<bool(const Vec&)>& predicate, int n,
                                   long samples, std::uint64_t seed) {
    check_dimension(n, 1);
    if (samples < 10000)
        throw std::invalid_argument("mc_body_fraction: need at least 10^4 samples");
    Rng rng(seed);
    long hits = 0;
    for (long i = 0; i < samples; ++i)
        if (predicate(sample_cross_polytope(n, rng))) ++hits;
    const double body = cross_polytope_volume(n);
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate est;
    est.mean = p * body;
    est.stderr_ = samples > 1 ? body * std::sqrt(p * (1.0 - p) / static_cast<double>(samples - 1))
                              : 0.0;
    est.samples = samples;
    est.seed = seed;
    return est;
}

/// Orthonormal basis of the hyperplane orthogonal to a unit vector a,
/// via the Householder reflector carrying e_1 to -sign(a_1) a.
inline std::vector<Vec> orthonormal_complement(const Vec& a) {
    require_unit(a, "orthonormal_complement");
    const int n = static_cast<int>(a.size());
    const double s = a[0] >= 0.0 ? 1.0 : -1.0;
    Vec w(a);
    w[0] += s;
    const double wn = norm(w);
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(n - 1));
    if (wn < 1e-12) {  // a = -e_1: the complement is spanned by e_2..e_n
        for (int j = 1; j < n; ++j) basis.push_back(unit_axis(n, j));
        return basis;
    }
    w = scaled(w, 1.0 / wn);
    for (int j = 1; j < n; ++j) {
        Vec col = unit_axis(n, j);
        const double c = 2.0 * w[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] -= c * w[static_cast<std::size_t>(i)];
        basis.push_back(std::move(col));
    }
    return basis;
}

/// Volume of the d-dimensional Euclidean ball of radius r.
inline double unit_ball_volume(int d, double r) {
    return std::pow(M_PI, d / 2.0) * std::pow(r, d) / std::tgamma(d / 2.0 + 1.0);
}

/// (n-1)-volume of the hyperplane section of the cross-polytope, estimated by
/// sampling the disc the enclosing Euclidean unit ball cuts from the same
/// hyperplane: uniform points of the (n-1)-ball of radius sqrt(1-t^2) about
/// the foot point t a, counted against the l1 ball.
inline McEstimate mc_hyperplane_section_volume(const HyperplaneSpec& h, int n, long samples,
                                               std::uint64_t seed) {
    check_dimension(n, 2);
    if (h.dim() != n)
        throw std::invalid_argument("mc_hyperplane_section_volume: dimension mismatch");
    require_unit(h.normal, "mc_hyperplane_section_volume");
    if (h.offset >= 1.0)
        throw std::invalid_argument("mc_hyperplane_section_volume: empty slice (offset >= 1)");
    if (samples < 1)
        throw std::invalid_argument("mc_hyperplane_section_volume: need at least one sample");

    const int d = n - 1;
    const double radius = std::sqrt(1.0 - h.offset * h.offset);
    const double disc = unit_ball_volume(d, radius);
    const Vec foot = scaled(h.normal, h.offset);
    const std::vector<Vec> basis = orthonormal_complement(h.normal);

    Rng rng(seed);
    long hits = 0;
    Vec point(static_cast<std::size_t>(n));
    for (long i = 0; i < samples; ++i) {
        Vec dir = rng.unit_vector(d);
        const double r = radius * std::pow(rng.uniform01(), 1.0 / d);
        point = foot;
        for (int j = 0; j < d; ++j) {
            const double c = r * dir[static_cast<std::size_t>(j)];
            for (int i2 = 0; i2 < n; ++i2)
                point[static_cast<std::size_t>(i2)] +=
                    c * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i2)];
        }
        if (l1_norm(point) <= 1.0) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate est;
    est.mean = p * disc;
    est.stderr_ = samples > 1 ? disc * std::sqrt(p * (1.0 - p) / static_cast<double>(samples - 1))
                              : 0.0;
    est.samples = samples;
    est.seed = seed;
    return est;
}

}  // namespace crosssec
