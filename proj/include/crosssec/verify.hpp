#pragma once

// The certification suite: every closed-form extremal answer is checked
// against the independent search and Monte Carlo oracles, the structural
// identities are verified on random inputs, and the discontinuity of the
// maximal line-section curve is located empirically.  Each check pins its
// tolerances here; the CLI `verify` command and the acceptance runner differ
// only in grid sizes and sample counts.

#include <sstream>
#include <string>
#include <vector>

#include "crosssec/closed_forms.hpp"
#include "crosssec/jsonio.hpp"
#include "crosssec/montecarlo.hpp"
#include "crosssec/search.hpp"
#include "crosssec/sweep.hpp"

namespace crosssec {

inline constexpr const char* kToolVersion = "0.1.0";

struct VerifyOptions {
    std::string level = "quick";
    std::vector<int> line_dims{2, 3, 4};
    std::vector<int> hyp_dims{3, 4};
    std::vector<int> simplex_dims{3, 4};
    std::vector<int> mc_dims{3, 4};
    long mc_samples = 100000;
    int mc_configs_per_dim = 8;
    int line_starts = 64;
    int hyp_starts = 64;
    int simplex_starts = 64;
    int probe_starts = 48;
    int minh_samples = 2000;
    int slab_samples = 200;
    int identity_samples = 200;
    std::uint64_t seed = 42;
};

inline VerifyOptions make_verify_options(const std::string& level, std::uint64_t seed) {
    VerifyOptions o;
    o.level = level;
    o.seed = seed;
    if (level == "quick") return o;
    if (level == "full") {
        o.line_dims = {2, 3, 4, 5, 6};
        o.hyp_dims = {3, 4, 5, 6};
        o.simplex_dims = {3, 4, 5, 6};
        o.mc_dims = {3, 4, 5};
        o.mc_samples = 1000000;
        o.mc_configs_per_dim = 20;
        o.line_starts = 256;
        o.hyp_starts = 128;
        o.simplex_starts = 128;
        o.probe_starts = 96;
        o.minh_samples = 10000;
        o.slab_samples = 1000;
        o.identity_samples = 1000;
        return o;
    }
    if (level == "acceptance") {
        o.line_dims = {2, 3, 4, 5};
        o.hyp_dims = {3, 4, 5, 6};
        o.simplex_dims = {3, 4, 5, 6, 7, 8};
        o.mc_dims = {3, 4, 5};
        o.mc_samples = 1000000;
        o.mc_configs_per_dim = 20;
        o.line_starts = 256;
        o.hyp_starts = 128;
        o.simplex_starts = 128;
        o.probe_starts = 96;
        o.minh_samples = 10000;
        o.slab_samples = 1000;
        o.identity_samples = 1000;
        return o;
    }
    throw std::invalid_argument("verify level must be 'quick' or 'full'");
}

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double max_gap = 0.0;
    std::string detail;
};

struct ProbeData {
    double step_location_lo = 0.0;
    double step_location_hi = 0.0;
    double observed_jump = 0.0;
    double formula_left_at_jump = 0.0;
    double formula_right_at_jump = 0.0;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<CheckResult> checks;
    ProbeData probe;
    bool all_passed = false;
};

namespace detail {

inline std::vector<double> line_t_grid() {
    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) ts.push_back(i / 10.0);
    ts.push_back(kInvSqrt2);
    ts.push_back(0.75);
    return ts;
}

inline std::vector<double> hyp_t_grid() { return {0.72, 0.8, 0.9, 0.99}; }

// Random far hyperplane with a healthy cap volume, so the Monte Carlo
// hit counts stay well away from zero.
inline std::pair<Vec, double> random_mc_config(int n, Rng& rng) {
    const double t = rng.uniform(0.72, 0.78);
    Vec a = random_feasible_normal(n, t, rng, 0.75, 0.995);
    return {scatter_normal(a, rng), t};
}

struct GapTracker {
    double worst = 0.0;
    void feed(double g) { worst = std::max(worst, g); }
};

}  // namespace detail

/// Certification of the maximal line-section formula: both oracles agree with
/// the closed form on the (n, t) grid, and no evaluated feasible line ever
/// beats it.
inline CheckResult check_max_line(const VerifyOptions& o) {
    CheckResult res{1, "max-line-sections", true, 0.0, ""};
    detail::GapTracker gap, overshoot;
    std::uint64_t stream = 0;
    for (int n : o.line_dims) {
        for (double t : detail::line_t_grid()) {
            const double closed = max_line_length(n, t).value;
            SearchConfig cfg;
            cfg.mode = SearchConfig::Mode::Maximize;
            cfg.starts = o.line_starts;
            cfg.seed = split_seed(o.seed, 1000 + stream++);
            const SearchReport r1 = search_lines_at_distance(n, t, cfg, closed);
            const SearchReport r2 = search_edge_pair_lines(n, t, cfg, closed);
            gap.feed(std::abs(*r1.certified_gap));
            gap.feed(std::abs(*r2.certified_gap));
            overshoot.feed(*r1.certified_gap);
            overshoot.feed(*r2.certified_gap);
        }
    }
    res.passed = gap.worst <= 1e-5 && overshoot.worst <= 1e-9;
    res.max_gap = gap.worst;
    res.detail = "max |oracle - closed|=" + format_double(gap.worst) +
                 " max overshoot=" + format_double(std::max(0.0, overshoot.worst));
    return res;
}

/// Certification of the minimal line-section formula: the minimizing search
/// never drops below the closed form, and the explicit extremal lines
/// reproduce it exactly and sit at the right distance.
inline CheckResult check_min_line(const VerifyOptions& o) {
    CheckResult res{2, "min-line-sections", true, 0.0, ""};
    double worst_drop = 0.0, worst_wit = 0.0, worst_dist = 0.0;
    std::uint64_t stream = 0;
    for (int n : o.line_dims) {
        const double tmax = 1.0 / std::sqrt(static_cast<double>(n));
        for (double t : detail::line_t_grid()) {
            if (t > tmax + 1e-15) continue;
            const ExtremalAnswer ans = min_line_length(n, t);
            SearchConfig cfg;
            cfg.mode = SearchConfig::Mode::Minimize;
            cfg.starts = o.line_starts;
            cfg.seed = split_seed(o.seed, 2000 + stream++);
            const SearchReport r = search_lines_at_distance(n, t, cfg, ans.value);
            worst_drop = std::max(worst_drop, ans.value - r.best_value);
            const LineSpec& w = std::get<LineSpec>(*ans.witness);
            worst_wit = std::max(worst_wit,
                                 std::abs(line_section_length(w, n).value - ans.value));
            worst_dist = std::max(
                worst_dist,
                std::abs(line_distance_to_origin(add(w.base, w.dir), sub(w.base, w.dir)) - t));
        }
    }
    res.passed = worst_drop <= 1e-5 && worst_wit <= 1e-9 && worst_dist <= 1e-12;
    res.max_gap = std::max({worst_drop, worst_wit, worst_dist});
    res.detail = "max closed-below-oracle drop=" + format_double(worst_drop) +
                 " witness value err=" + format_double(worst_wit) +
                 " witness distance err=" + format_double(worst_dist);
    return res;
}

/// Certification of the far-hyperplane maximal section: search agrees with
/// the closed form at coordinate normals, and the underlying product
/// inequality holds on random feasible normals.
inline CheckResult check_max_hyperplane(const VerifyOptions& o) {
    CheckResult res{3, "max-hyperplane-sections", true, 0.0, ""};
    double worst_rel = 0.0, worst_axis = 0.0, worst_violation = 0.0;
    std::uint64_t stream = 0;
    for (int n : o.hyp_dims) {
        for (double t : detail::hyp_t_grid()) {
            const double closed = max_hyperplane_volume(n, t).value;
            SearchConfig cfg;
            cfg.starts = o.hyp_starts;
            cfg.seed = split_seed(o.seed, 3000 + stream++);
            const SearchReport r = search_hyperplanes_at_distance(
                n, t, cfg, HyperplaneObjective::SectionVolume, closed);
            worst_rel = std::max(worst_rel, std::abs(*r.certified_gap) / closed);
            const Vec& a = std::get<HyperplaneSpec>(*r.best_witness).normal;
            double amax = 0.0;
            for (double x : a) amax = std::max(amax, std::abs(x));
            worst_axis = std::max(worst_axis, 1.0 - amax);

            Rng rng(split_seed(o.seed, 3500 + stream));
            for (int i = 0; i < o.minh_samples; ++i) {
                const Vec rn = random_feasible_normal(n, t, rng);
                const double a1 = rn[0];
                double lhs = std::pow(a1, n - 2) * std::pow(a1 - t, n - 1);
                double rhs = std::pow(1.0 - t, n - 1);
                for (int j = 1; j < n; ++j)
                    rhs *= a1 * a1 - rn[static_cast<std::size_t>(j)] * rn[static_cast<std::size_t>(j)];
                worst_violation = std::max(worst_violation, lhs - rhs);
            }
        }
    }
    res.passed = worst_rel <= 1e-6 && worst_axis <= 1e-3 && worst_violation <= 1e-12;
    res.max_gap = worst_rel;
    res.detail = "max relative gap=" + format_double(worst_rel) +
                 " witness off-axis=" + format_double(worst_axis) +
                 " product-inequality violation=" + format_double(std::max(0.0, worst_violation));
    return res;
}

/// Certification of the minimal wide-slab volume: exact at coordinate
/// normals, a true lower bound on random normals.
inline CheckResult check_min_slab(const VerifyOptions& o) {
    CheckResult res{4, "min-slab-volume", true, 0.0, ""};
    double worst_exact = 0.0, worst_below = 0.0;
    std::uint64_t stream = 0;
    for (int n : o.hyp_dims) {
        for (double t : detail::hyp_t_grid()) {
            const double bound = min_slab_volume(n, t).value;
            for (int i = 0; i < n; ++i) {
                const double v = slab_volume(SlabSpec{unit_axis(n, i), t}, n).value;
                worst_exact = std::max(worst_exact, std::abs(v - bound));
            }
            Rng rng(split_seed(o.seed, 4000 + stream++));
            for (int i = 0; i < o.slab_samples; ++i) {
                const Vec a = scatter_normal(random_feasible_normal(n, t, rng), rng);
                const double v = slab_volume(SlabSpec{a, t}, n).value;
                worst_below = std::max(worst_below, bound - v);
            }
        }
    }
    res.passed = worst_exact <= 1e-12 && worst_below <= 1e-9;
    res.max_gap = std::max(worst_exact, worst_below);
    res.detail = "coordinate-normal err=" + format_double(worst_exact) +
                 " worst bound undershoot=" + format_double(std::max(0.0, worst_below));
    return res;
}

/// Monte Carlo cross-checks of the three exact volumes on random far
/// hyperplanes, each at three standard errors.
inline CheckResult check_monte_carlo(const VerifyOptions& o) {
    CheckResult res{5, "monte-carlo-cross-checks", true, 0.0, ""};
    double worst_z = 0.0;
    std::uint64_t stream = 0;
    for (int n : o.mc_dims) {
        Rng rng(split_seed(o.seed, 5000 + static_cast<std::uint64_t>(n)));
        for (int c = 0; c < o.mc_configs_per_dim; ++c) {
            const auto [a, t] = detail::random_mc_config(n, rng);
            const HyperplaneSpec h{a, t};
            const double chop = chopped_volume(make_chopped_pyramid(h, n));
            const double hyp = hyperplane_section_volume(h, n).value;
            const double slab = slab_volume(SlabSpec{a, t}, n).value;

            const McEstimate mc_chop = mc_body_fraction(
                [&](const Vec& x) { return dot(x, a) >= t; }, n, o.mc_samples,
                split_seed(o.seed, 6000 + stream));
            const McEstimate mc_slab = mc_body_fraction(
                [&](const Vec& x) { return std::abs(dot(x, a)) <= t; }, n, o.mc_samples,
                split_seed(o.seed, 7000 + stream));
            const McEstimate mc_hyp =
                mc_hyperplane_section_volume(h, n, o.mc_samples, split_seed(o.seed, 8000 + stream));
            ++stream;

            auto z = [](double exact, const McEstimate& e) {
                return e.stderr_ > 0.0 ? std::abs(exact - e.mean) / e.stderr_
                                       : (std::abs(exact - e.mean) > 0.0 ? 1e9 : 0.0);
            };
            worst_z = std::max({worst_z, z(chop, mc_chop), z(slab, mc_slab), z(hyp, mc_hyp)});
        }
    }
    res.passed = worst_z <= 3.0;
    res.max_gap = worst_z;
    res.detail = "worst |z|=" + format_double(worst_z) + " over " +
                 std::to_string(o.mc_dims.size() * static_cast<std::size_t>(o.mc_configs_per_dim) * 3) +
                 " comparisons at " + std::to_string(o.mc_samples) + " samples";
    return res;
}

/// Certification of the central simplex-section extremes, including the exact
/// equality-case configurations.
inline CheckResult check_simplex(const VerifyOptions& o) {
    CheckResult res{6, "simplex-central-sections", true, 0.0, ""};
    double worst_gap = 0.0, worst_wit = 0.0;
    std::uint64_t stream = 0;
    for (int n : o.simplex_dims) {
        const auto [mn, mx] = simplex_extremes(n);
        SearchConfig cfg;
        cfg.starts = o.simplex_starts;
        cfg.mode = SearchConfig::Mode::Minimize;
        cfg.seed = split_seed(o.seed, 9000 + stream++);
        const SearchReport rmin = search_simplex_central_lines(n, cfg, mn);
        cfg.mode = SearchConfig::Mode::Maximize;
        cfg.seed = split_seed(o.seed, 9000 + stream++);
        const SearchReport rmax = search_simplex_central_lines(n, cfg, mx);
        worst_gap = std::max({worst_gap, std::abs(*rmin.certified_gap), std::abs(*rmax.certified_gap)});
        worst_wit = std::max(
            worst_wit, std::abs(simplex_central_line_length(simplex_min_direction(n), n) - mn));
        worst_wit = std::max(
            worst_wit, std::abs(simplex_central_line_length(simplex_max_direction(n), n) - mx));
        worst_wit = std::max(
            worst_wit, std::abs(simplex_chord_through_centroid(unit_axis(n, 0), n) - mx));
    }
    res.passed = worst_gap <= 1e-6 && worst_wit <= 1e-12;
    res.max_gap = std::max(worst_gap, worst_wit);
    res.detail = "max search gap=" + format_double(worst_gap) +
                 " equality-witness err=" + format_double(worst_wit);
    return res;
}

/// Structural identities: pyramid/section volume relation, the branch-value /
/// triangle-chord composition, threshold ordering, and branch agreement at
/// the threshold points.
inline CheckResult check_structural(const VerifyOptions& o) {
    CheckResult res{7, "structural-identities", true, 0.0, ""};
    double worst_identity = 0.0;
    std::uint64_t stream = 0;
    for (int n : o.hyp_dims) {
        Rng rng(split_seed(o.seed, 11000 + stream++));
        for (int i = 0; i < o.identity_samples; ++i) {
            const double t = rng.uniform(0.72, 0.95);
            const Vec a = scatter_normal(random_feasible_normal(n, t, rng), rng);
            const HyperplaneSpec h{a, t};
            const ChoppedPyramid c = make_chopped_pyramid(h, n);
            if (c.empty) continue;
            const double lhs = n * chopped_volume(c);
            const double rhs = hyperplane_section_volume(h, n).value * (c.normal[0] - t);
            worst_identity = std::max(worst_identity, std::abs(lhs - rhs));
        }
    }

    double worst_comp = 0.0;  // must be exactly zero
    double worst_t0 = 0.0;
    bool decreasing = true;
    double worst_agree = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const ThresholdTable tab = make_threshold_table(n);
        worst_t0 = std::max(worst_t0,
                            std::abs(tab(0) - 1.0 / std::sqrt(static_cast<double>(n))));
        for (int k = 0; k + 1 < n; ++k)
            if (!(tab(k) > tab(k + 1))) decreasing = false;
        for (int k = 1; k <= n - 1; ++k) {
            for (int j = 0; j <= 8; ++j) {
                const double t = tab(0) * j / 8.0;
                const double direct = isosceles_min_chord(
                    1.0 / std::sqrt(static_cast<double>(k)),
                    1.0 / std::sqrt(static_cast<double>(n - k)), t);
                worst_comp = std::max(worst_comp,
                                      std::abs(min_line_branch_value(n, k, t) - direct));
            }
            // adjacent branches agree at the switch point
            const double tk = tab(k);
            const double left = min_line_branch_value(n, k, tk);
            const double right = k + 1 <= n - 1
                                     ? min_line_branch_value(n, k + 1, tk)
                                     : 2.0 / std::sqrt(static_cast<double>(n));
            worst_agree = std::max(worst_agree, std::abs(left - right));
        }
    }

    res.passed = worst_identity <= 1e-12 && worst_comp == 0.0 && worst_t0 <= 1e-14 &&
                 decreasing && worst_agree <= 1e-12;
    res.max_gap = std::max({worst_identity, worst_comp, worst_t0, worst_agree});
    res.detail = "pyramid/section identity err=" + format_double(worst_identity) +
                 " branch/chord composition err=" + format_double(worst_comp) +
                 " threshold origin err=" + format_double(worst_t0) +
                 (decreasing ? " thresholds strictly decreasing" : " THRESHOLD ORDER BROKEN") +
                 " branch agreement err=" + format_double(worst_agree);
    return res;
}

/// Locate the jump of the maximal line-section curve empirically and compare
/// with the closed form's one-sided values.  Informational: the probe records
/// where the oracle sees the discontinuity; it fails only if the sweep could
/// not run.
inline CheckResult check_discontinuity_probe(const VerifyOptions& o, ProbeData& probe) {
    CheckResult res{8, "discontinuity-probe", true, 0.0, ""};
    const int n = 3;
    std::vector<double> ts, search_vals, closed_vals;
    std::uint64_t stream = 0;
    for (int i = 0; i <= 60; ++i) {
        const double t = 0.70 + 1e-3 * i;
        const double closed = max_line_length(n, t).value;
        SearchConfig cfg;
        cfg.mode = SearchConfig::Mode::Maximize;
        cfg.starts = o.probe_starts;
        cfg.seed = split_seed(o.seed, 12000 + stream++);
        const SearchReport r = search_lines_at_distance(n, t, cfg, closed);
        ts.push_back(t);
        search_vals.push_back(r.best_value);
        closed_vals.push_back(closed);
    }
    std::size_t jump_at = 1;
    double jump = 0.0;
    for (std::size_t i = 1; i < search_vals.size(); ++i) {
        const double step = std::abs(search_vals[i] - search_vals[i - 1]);
        if (step > jump) {
            jump = step;
            jump_at = i;
        }
    }
    probe.step_location_lo = ts[jump_at - 1];
    probe.step_location_hi = ts[jump_at];
    probe.observed_jump = jump;
    probe.formula_left_at_jump = max_line_length(n, kInvSqrt2).value;
    probe.formula_right_at_jump = kInvSqrt2 - std::sqrt(kInvSqrt2 * kInvSqrt2 - 0.5);
    const double at34_left = 0.75 - std::sqrt(0.75 * 0.75 - 0.5);
    const double at34_right = 2.0 - 2.0 * 0.75;
    res.max_gap = jump;
    res.detail =
        "largest oracle step " + format_double(jump) + " between t=" +
        format_double(probe.step_location_lo) + " and t=" + format_double(probe.step_location_hi) +
        "; formula one-sided values at t=1/sqrt(2): " +
        format_double(probe.formula_left_at_jump) + " vs " +
        format_double(probe.formula_right_at_jump) + " (jump " +
        format_double(probe.formula_left_at_jump - probe.formula_right_at_jump) +
        "); at t=3/4 the formula is continuous: " + format_double(at34_left) + " vs " +
        format_double(at34_right);
    return res;
}

inline VerifyReport run_verify(const VerifyOptions& o) {
    VerifyReport report;
    report.options = o;
    report.checks.push_back(check_max_line(o));
    report.checks.push_back(check_min_line(o));
    report.checks.push_back(check_max_hyperplane(o));
    report.checks.push_back(check_min_slab(o));
    report.checks.push_back(check_monte_carlo(o));
    report.checks.push_back(check_simplex(o));
    report.checks.push_back(check_structural(o));
    report.checks.push_back(check_discontinuity_probe(o, report.probe));
    report.all_passed = true;
    for (const auto& c : report.checks) report.all_passed = report.all_passed && c.passed;
    return report;
}

inline std::string render_text(const VerifyReport& r) {
    std::string out;
    out += "crosssec verification report\n";
    out += "level=" + r.options.level + " seed=" + std::to_string(r.options.seed) + "\n";
    for (const auto& c : r.checks) {
        out += std::string(c.passed ? "[PASS] " : "[FAIL] ") + std::to_string(c.id) + " " +
               c.name + ": " + c.detail + "\n";
    }
    out += std::string("RESULT: ") + (r.all_passed ? "PASS" : "FAIL") + "\n";
    return out;
}

inline std::string render_json(const VerifyReport& r) {
    JsonValue root = JsonValue::object();
    RunManifest m;
    m.version = kToolVersion;
    m.command = "verify";
    m.seed = r.options.seed;
    m.config = {
        {"level", r.options.level},
        {"mc_samples", std::to_string(r.options.mc_samples)},
        {"mc_configs_per_dim", std::to_string(r.options.mc_configs_per_dim)},
        {"line_starts", std::to_string(r.options.line_starts)},
        {"hyp_starts", std::to_string(r.options.hyp_starts)},
        {"simplex_starts", std::to_string(r.options.simplex_starts)},
    };
    root.set("manifest", manifest_json(m));
    JsonValue checks = JsonValue::array();
    for (const auto& c : r.checks) {
        JsonValue jc = JsonValue::object();
        jc.set("id", c.id);
        jc.set("name", c.name);
        jc.set("passed", c.passed);
        jc.set("max_gap", c.max_gap);
        jc.set("detail", c.detail);
        checks.push(std::move(jc));
    }
    root.set("checks", std::move(checks));
    JsonValue probe = JsonValue::object();
    probe.set("n", 3);
    probe.set("step_location_lo", r.probe.step_location_lo);
    probe.set("step_location_hi", r.probe.step_location_hi);
    probe.set("observed_jump", r.probe.observed_jump);
    probe.set("formula_left_at_jump", r.probe.formula_left_at_jump);
    probe.set("formula_right_at_jump", r.probe.formula_right_at_jump);
    root.set("discontinuity_probe", std::move(probe));
    root.set("passed", r.all_passed);
    return root.dump();
}

}  // namespace crosssec
