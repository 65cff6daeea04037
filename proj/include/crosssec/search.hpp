#pragma once

// Independent certification machinery: multi-start derivative-free searches
// over lines at a fixed distance from the origin, over unit hyperplane
// normals, and over central directions in the simplex hyperplane, plus the
// edge-pair line enumeration that mirrors the combinatorial reduction of the
// extremal-line problem.
//
// Constraints are handled by parameterization, never by penalties: every
// evaluated configuration lies exactly on the constraint set (lines are built
// as base = t u with u orthogonal to the unit direction), so reported values
// are always values of feasible configurations.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "crosssec/closed_forms.hpp"
#include "crosssec/core.hpp"
#include "crosssec/exact.hpp"
#include "crosssec/rng.hpp"

namespace crosssec {

struct SearchConfig {
    int starts = 256;
    int max_iters = 500;
    double tolerance = 1e-10;  // convergence tolerance on the objective
    std::uint64_t seed = 0;
    enum class Mode { Maximize, Minimize } mode = Mode::Maximize;
};

struct SearchReport {
    double best_value = 0.0;
    std::optional<Witness> best_witness;
    std::vector<double> start_values;  // outcome of each start, in start order
    long evaluations = 0;
    std::optional<double> closed_form;
    std::optional<double> certified_gap;  // best_value - closed_form
};

namespace detail {

constexpr double kInfeasible = 1e100;

struct NelderMead {
    int max_iters = 500;
    double ftol = 1e-10;
    double step = 0.4;

    // Minimizes f over raw parameter vectors; returns the best vertex.
    template <typename F>
    std::pair<Vec, double> run(F&& f, const Vec& x0) const {
        const std::size_t d = x0.size();
        std::vector<Vec> xs(d + 1, x0);
        std::vector<double> fs(d + 1);
        for (std::size_t i = 1; i <= d; ++i) xs[i][i - 1] += step;
        for (std::size_t i = 0; i <= d; ++i) fs[i] = f(xs[i]);

        std::vector<std::size_t> order(d + 1);
        for (int iter = 0; iter < max_iters; ++iter) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
            const std::size_t best = order[0], worst = order[d], second = order[d - 1];
            if (std::abs(fs[worst] - fs[best]) <= ftol) break;

            Vec centroid(d, 0.0);
            for (std::size_t i = 0; i <= d; ++i)
                if (i != worst)
                    for (std::size_t j = 0; j < d; ++j) centroid[j] += xs[i][j];
            for (double& c : centroid) c /= static_cast<double>(d);

            auto blend = [&](double coef) {
                Vec p(d);
                for (std::size_t j = 0; j < d; ++j)
                    p[j] = centroid[j] + coef * (xs[worst][j] - centroid[j]);
                return p;
            };

            Vec refl = blend(-1.0);
            const double f_refl = f(refl);
            if (f_refl < fs[order[0]]) {
                Vec expd = blend(-2.0);
                const double f_expd = f(expd);
                if (f_expd < f_refl) {
                    xs[worst] = std::move(expd);
                    fs[worst] = f_expd;
                } else {
                    xs[worst] = std::move(refl);
                    fs[worst] = f_refl;
                }
            } else if (f_refl < fs[second]) {
                xs[worst] = std::move(refl);
                fs[worst] = f_refl;
            } else {
                Vec ctr = blend(f_refl < fs[worst] ? -0.5 : 0.5);
                const double f_ctr = f(ctr);
                if (f_ctr < std::min(f_refl, fs[worst])) {
                    xs[worst] = std::move(ctr);
                    fs[worst] = f_ctr;
                } else {  // shrink toward the best vertex
                    for (std::size_t i = 0; i <= d; ++i) {
                        if (i == best) continue;
                        for (std::size_t j = 0; j < d; ++j)
                            xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
                        fs[i] = f(xs[i]);
                    }
                }
            }
        }
        std::size_t ibest = 0;
        for (std::size_t i = 1; i <= d; ++i)
            if (fs[i] < fs[ibest]) ibest = i;
        return {xs[ibest], fs[ibest]};
    }
};

// Re-run the polytope search from the incumbent with progressively smaller
// initial simplices.  Plain Nelder-Mead stalls at kinks of piecewise-smooth
// objectives; fresh restarts at the solution recover several digits.
template <typename F>
inline void polish(F&& f, const NelderMead& base, const Vec& incumbent) {
    NelderMead nm = base;
    for (double step : {0.1, 0.01, 1e-3, 1e-4, 1e-5}) {
        nm.step = step;
        nm.run(f, incumbent);
    }
}

// Raw 2n-vector -> line at distance exactly t: unit direction from the first
// block, unit perpendicular offset direction from the second.
inline std::optional<LineSpec> line_from_raw(const Vec& raw, int n, double t) {
    Vec d(raw.begin(), raw.begin() + n);
    const double dn = norm(d);
    if (dn < 1e-12) return std::nullopt;
    d = scaled(d, 1.0 / dn);
    Vec u(raw.begin() + n, raw.end());
    u = sub(u, scaled(d, dot(u, d)));
    const double un = norm(u);
    if (un < 1e-12) return std::nullopt;
    u = scaled(u, 1.0 / un);
    return LineSpec{scaled(u, t), std::move(d)};
}

}  // namespace detail

/// Multi-start search over lines at distance exactly t from the origin.
/// Maximize mode certifies the maximal-section formula; minimize mode (only
/// meaningful for t <= 1/sqrt(n), where every such line meets the body)
/// certifies the minimal one, rejecting measure-zero and empty intersections.
/// For t > 1/sqrt(n) the minimum 0 is attained by disjoint lines and is
/// reported directly without a witness.
///
/// Starts are random, except for one seeded start per coordinate pair at the
/// edge line and one at the axis-perpendicular cut: the maximizer at the
/// exact jump distance 1/sqrt(2) is an isolated edge-line configuration that
/// no local step finds from a random start.
inline SearchReport search_lines_at_distance(int n, double t, const SearchConfig& config,
                                             std::optional<double> closed_form = std::nullopt) {
    check_dimension(n, 2);
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("search_lines_at_distance: t outside [0, 1]");
    const bool maximize = config.mode == SearchConfig::Mode::Maximize;

    SearchReport report;
    report.closed_form = closed_form;
    if (!maximize && t > 1.0 / std::sqrt(static_cast<double>(n)) + kExactTol) {
        report.best_value = 0.0;
        if (closed_form) report.certified_gap = -*closed_form;
        return report;
    }

    const double worst = detail::kInfeasible;
    double best_signed = worst;  // minimized objective value
    Vec best_raw;

    auto objective = [&](const Vec& raw) {
        auto line = detail::line_from_raw(raw, n, t);
        if (!line) return worst;
        const SectionResult sec = line_section_length(*line, n);
        ++report.evaluations;
        double val;
        if (maximize) {
            val = -sec.value;
        } else {
            val = (sec.tangent || sec.value <= 0.0) ? worst : sec.value;
        }
        if (val < best_signed) {
            best_signed = val;
            best_raw = raw;
        }
        return val;
    };

    std::vector<Vec> seeds;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec edge(2 * static_cast<std::size_t>(n), 0.0);
            const double r = 1.0 / std::sqrt(2.0);
            edge[static_cast<std::size_t>(i)] = -r;  // direction e_j - e_i
            edge[static_cast<std::size_t>(j)] = r;
            edge[static_cast<std::size_t>(n + i)] = r;  // offset toward the edge midpoint
            edge[static_cast<std::size_t>(n + j)] = r;
            seeds.push_back(std::move(edge));
            Vec perp(2 * static_cast<std::size_t>(n), 0.0);
            perp[static_cast<std::size_t>(j)] = 1.0;      // direction e_j
            perp[static_cast<std::size_t>(n + i)] = 1.0;  // offset toward e_i
            seeds.push_back(std::move(perp));
        }
    }

    detail::NelderMead nm{config.max_iters, config.tolerance, 0.4};
    const int total = static_cast<int>(seeds.size()) + config.starts;
    report.start_values.reserve(static_cast<std::size_t>(total));
    for (int s = 0; s < total; ++s) {
        Vec x0;
        if (s < static_cast<int>(seeds.size())) {
            x0 = seeds[static_cast<std::size_t>(s)];
        } else {
            Rng rng(split_seed(config.seed, static_cast<std::uint64_t>(s)));
            x0 = rng.gaussian_vector(2 * n);
            if (maximize) {
                // Resample until the start meets the body; keeps far-out t
                // values from wasting every start on the empty plateau.
                for (int tries = 0; tries < 2000 && objective(x0) >= 0.0; ++tries)
                    x0 = rng.gaussian_vector(2 * n);
            }
        }
        const auto [x, fx] = nm.run(objective, x0);
        report.start_values.push_back(fx >= worst ? 0.0 : (maximize ? -fx : fx));
    }

    if (best_signed >= worst) {
        report.best_value = 0.0;  // nothing feasible was ever evaluated
    } else {
        detail::polish(objective, nm, best_raw);
        const LineSpec line = canonicalize_line(*detail::line_from_raw(best_raw, n, t));
        const SectionResult sec = line_section_length(line, n);
        report.best_value = sec.value;
        report.best_witness = Witness{line};
    }
    if (closed_form) report.certified_gap = report.best_value - *closed_form;
    return report;
}

namespace detail {

struct EdgePair {
    Vec a0, a1, b0, b1;
    const char* name;
};

inline std::vector<EdgePair> edge_pair_cases(int n) {
    auto e = [&](int i, double s) { return unit_axis(n, i, s); };
    std::vector<EdgePair> cases;
    cases.push_back({e(0, 1), e(1, 1), e(0, -1), e(1, -1), "opposite-planar"});
    cases.push_back({e(0, 1), e(1, 1), e(0, 1), e(1, -1), "adjacent-planar"});
    if (n >= 3) {
        cases.push_back({e(0, 1), e(1, 1), e(0, 1), e(2, 1), "shared-vertex"});
        cases.push_back({e(0, 1), e(1, 1), e(0, -1), e(2, 1), "skew-three-indices"});
    }
    if (n >= 4) cases.push_back({e(0, 1), e(1, 1), e(2, 1), e(3, 1), "disjoint-indices"});
    return cases;
}

struct EdgePairEval {
    int n;
    double t;
    const EdgePair* pair;
    long* evaluations;

    Vec point_a(double alpha) const {
        return add(scaled(pair->a0, 1.0 - alpha), scaled(pair->a1, alpha));
    }
    Vec point_b(double beta) const {
        return add(scaled(pair->b0, 1.0 - beta), scaled(pair->b1, beta));
    }
    // distance-to-origin defect of the line through a(alpha), b(beta)
    double defect(double alpha, double beta) const {
        const Vec a = point_a(alpha), b = point_b(beta);
        if (norm(sub(a, b)) < 1e-12) return std::numeric_limits<double>::quiet_NaN();
        return line_distance_to_origin(a, b) - t;
    }
    double section(double alpha, double beta) const {
        const Vec a = point_a(alpha), b = point_b(beta);
        const Vec diff = sub(b, a);
        const double len = norm(diff);
        if (len < 1e-12) return 0.0;
        ++*evaluations;
        return line_section_length(LineSpec{a, scaled(diff, 1.0 / len)}, n).value;
    }
    // All beta with defect == 0 for this alpha, by scan and bisection.
    std::vector<double> roots(double alpha, int grid = 129) const {
        std::vector<double> out;
        double prev_b = 0.0, prev_g = defect(alpha, 0.0);
        if (std::abs(prev_g) < 1e-13) out.push_back(0.0);
        for (int i = 1; i < grid; ++i) {
            const double b = static_cast<double>(i) / (grid - 1);
            const double g = defect(alpha, b);
            if (std::isnan(g)) {
                prev_b = b;
                prev_g = g;
                continue;
            }
            if (std::abs(g) < 1e-13) {
                out.push_back(b);
            } else if (!std::isnan(prev_g) && prev_g * g < 0.0) {
                double lo = prev_b, hi = b, glo = prev_g;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = defect(alpha, mid);
                    if (gm == 0.0 || std::isnan(gm)) {
                        lo = hi = mid;
                        break;
                    }
                    if ((gm < 0.0) == (glo < 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                out.push_back(0.5 * (lo + hi));
            }
            prev_b = b;
            prev_g = g;
        }
        return out;
    }
    // Best section over the constraint roots at this alpha.
    std::pair<double, double> best_at(double alpha) const {
        double best = -1.0, best_beta = 0.0;
        for (double b : roots(alpha)) {
            const double v = section(alpha, b);
            if (v > best) {
                best = v;
                best_beta = b;
            }
        }
        return {best, best_beta};
    }
};

}  // namespace detail

/// Deterministic maximal-line search that enumerates the combinatorial types
/// of edge pairs the extremal line can pass through (up to coordinate
/// permutations and sign flips), solves the fixed-distance constraint along
/// each pair, and maximizes the resulting one-parameter families by nested
/// grid refinement.
inline SearchReport search_edge_pair_lines(int n, double t, const SearchConfig& config,
                                           std::optional<double> closed_form = std::nullopt) {
    check_dimension(n, 2);
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("search_edge_pair_lines: t outside [0, 1]");
    (void)config;  // enumeration is deterministic; config kept for interface symmetry

    SearchReport report;
    report.closed_form = closed_form;
    double best = 0.0, best_alpha = 0.0, best_beta = 0.0;
    const detail::EdgePair* best_pair = nullptr;

    const auto cases = detail::edge_pair_cases(n);
    for (const auto& pair : cases) {
        detail::EdgePairEval eval{n, t, &pair, &report.evaluations};
        double cbest = -1.0, calpha = 0.0, cbeta = 0.0;
        const int coarse = 601;
        for (int i = 0; i < coarse; ++i) {
            const double alpha = static_cast<double>(i) / (coarse - 1);
            const auto [v, b] = eval.best_at(alpha);
            if (v > cbest) {
                cbest = v;
                calpha = alpha;
                cbeta = b;
            }
        }
        double width = 1.0 / (coarse - 1);
        for (int round = 0; round < 3 && cbest >= 0.0; ++round) {
            const double lo = std::max(0.0, calpha - width), hi = std::min(1.0, calpha + width);
            const int fine = 201;
            for (int i = 0; i < fine; ++i) {
                const double alpha = lo + (hi - lo) * static_cast<double>(i) / (fine - 1);
                const auto [v, b] = eval.best_at(alpha);
                if (v > cbest) {
                    cbest = v;
                    calpha = alpha;
                    cbeta = b;
                }
            }
            width = (hi - lo) / (fine - 1);
        }
        report.start_values.push_back(std::max(0.0, cbest));
        if (cbest > best) {
            best = cbest;
            best_alpha = calpha;
            best_beta = cbeta;
            best_pair = &pair;
        }
    }

    report.best_value = best;
    if (best_pair != nullptr && best > 0.0) {
        detail::EdgePairEval eval{n, t, best_pair, &report.evaluations};
        report.best_witness =
            Witness{canonicalize_line(eval.point_a(best_alpha), eval.point_b(best_beta))};
    }
    if (closed_form) report.certified_gap = report.best_value - *closed_form;
    return report;
}

/// Random unit normal with max coordinate above t, drawn in the canonical
/// frame (leading coordinate is the large one, all entries as sampled).
inline Vec random_feasible_normal(int n, double t, Rng& rng, double lo = 0.02, double hi = 0.98) {
    const double a1 = t + (1.0 - t) * rng.uniform(lo, hi);
    const double rest = std::sqrt(std::max(0.0, 1.0 - a1 * a1));
    Vec tail = rng.unit_vector(n - 1);
    Vec a(static_cast<std::size_t>(n));
    a[0] = a1;
    for (int i = 1; i < n; ++i) a[static_cast<std::size_t>(i)] = rest * tail[static_cast<std::size_t>(i - 1)];
    return a;
}

/// Scatter a canonical-frame normal by a random coordinate permutation and
/// random sign flips (the section and slab volumes are invariant under both).
inline Vec scatter_normal(const Vec& a, Rng& rng) {
    const int n = static_cast<int>(a.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform01() * (i + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(std::min(j, i))]);
    }
    Vec out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
            rng.sign() * a[static_cast<std::size_t>(i)];
    return out;
}

enum class HyperplaneObjective { SectionVolume, SlabVolume };

/// Multi-start search over unit normals at fixed distance t > 1/sqrt(2),
/// maximizing the hyperplane section volume or minimizing the slab volume
/// through the exact formulas.  Starts mix the n coordinate normals with
/// random normals drawn from the feasible cone (a random unit vector almost
/// never satisfies max|a_i| > t when t is close to 1).
inline SearchReport search_hyperplanes_at_distance(int n, double t, const SearchConfig& config,
                                                   HyperplaneObjective objective,
                                                   std::optional<double> closed_form = std::nullopt) {
    check_dimension(n, 3);
    if (t <= kInvSqrt2 || t >= 1.0)
        throw std::invalid_argument(
            "search_hyperplanes_at_distance: t must lie in (1/sqrt(2), 1)");

    const bool maximize = objective == HyperplaneObjective::SectionVolume;
    const double body = cross_polytope_volume(n);

    SearchReport report;
    report.closed_form = closed_form;
    double best_signed = detail::kInfeasible;
    Vec best_raw;

    auto value_of = [&](const Vec& a) {
        double amax = 0.0;
        for (double x : a) amax = std::max(amax, std::abs(x));
        if (objective == HyperplaneObjective::SectionVolume) {
            if (amax <= t + kExactTol) return 0.0;  // misses or touches the body
            return hyperplane_section_volume(HyperplaneSpec{a, t}, n).value;
        }
        if (amax <= t + kExactTol) return body;  // slab swallows the body
        return slab_volume(SlabSpec{a, t}, n).value;
    };
    auto obj = [&](const Vec& raw) {
        const double len = norm(raw);
        if (len < 1e-12) return detail::kInfeasible;
        const Vec a = scaled(raw, 1.0 / len);
        ++report.evaluations;
        const double v = value_of(a);
        const double signedv = maximize ? -v : v;
        if (signedv < best_signed) {
            best_signed = signedv;
            best_raw = a;
        }
        return signedv;
    };

    detail::NelderMead nm{config.max_iters, config.tolerance, 0.25};
    const int total = n + config.starts;
    for (int s = 0; s < total; ++s) {
        Vec x0;
        if (s < n) {
            x0 = unit_axis(n, s);
        } else {
            Rng rng(split_seed(config.seed, static_cast<std::uint64_t>(s)));
            x0 = scatter_normal(random_feasible_normal(n, t, rng), rng);
        }
        const auto [x, fx] = nm.run(obj, x0);
        report.start_values.push_back(maximize ? -fx : fx);
    }

    detail::polish(obj, nm, best_raw);
    const HyperplaneSpec h{best_raw, t};
    report.best_value = value_of(best_raw);
    report.best_witness = Witness{h};
    if (closed_form) report.certified_gap = report.best_value - *closed_form;
    return report;
}

/// Multi-start search over unit directions v with sum v_i = 0, optimizing the
/// central-line section of the regular simplex in either mode.
inline SearchReport search_simplex_central_lines(int n, const SearchConfig& config,
                                                 std::optional<double> closed_form = std::nullopt) {
    check_dimension(n, 3);
    const bool maximize = config.mode == SearchConfig::Mode::Maximize;

    SearchReport report;
    report.closed_form = closed_form;
    double best_signed = detail::kInfeasible;
    Vec best_dir;

    auto direction_of = [&](const Vec& raw) -> std::optional<Vec> {
        double mean = 0.0;
        for (double x : raw) mean += x;
        mean /= static_cast<double>(raw.size());
        Vec v(raw);
        for (double& x : v) x -= mean;
        const double len = norm(v);
        if (len < 1e-12) return std::nullopt;
        return scaled(v, 1.0 / len);
    };
    auto obj = [&](const Vec& raw) {
        const auto v = direction_of(raw);
        if (!v) return detail::kInfeasible;
        ++report.evaluations;
        const double len = simplex_central_line_length(*v, n);
        const double signedv = maximize ? -len : len;
        if (signedv < best_signed) {
            best_signed = signedv;
            best_dir = *v;
        }
        return signedv;
    };

    detail::NelderMead nm{config.max_iters, config.tolerance, 0.4};
    for (int s = 0; s < config.starts; ++s) {
        Rng rng(split_seed(config.seed, static_cast<std::uint64_t>(s)));
        const auto [x, fx] = nm.run(obj, rng.gaussian_vector(n));
        report.start_values.push_back(maximize ? -fx : fx);
    }

    detail::polish(obj, nm, best_dir);
    report.best_value = simplex_central_line_length(best_dir, n);
    Vec centroid(static_cast<std::size_t>(n), 1.0 / n);
    report.best_witness = Witness{LineSpec{centroid, detail::canonical_direction(best_dir)}};
    if (closed_form) report.certified_gap = report.best_value - *closed_form;
    return report;
}

}  // namespace crosssec
