#include <catch2/catch_amalgamated.hpp>

#include "crosssec/search.hpp"

using namespace crosssec;

namespace {

SearchConfig quick_config(SearchConfig::Mode mode, std::uint64_t seed = 5) {
    SearchConfig cfg;
    cfg.starts = 48;
    cfg.max_iters = 400;
    cfg.seed = seed;
    cfg.mode = mode;
    return cfg;
}

}  // namespace

TEST_CASE("line search certifies the maximal formula on spot values") {
    const double closed = max_line_length(3, 0.5).value;  // 2/(0.5 + sqrt(0.75))
    CHECK(closed == Catch::Approx(1.4641016151377544).margin(1e-12));
    const SearchReport r = search_lines_at_distance(
        3, 0.5, quick_config(SearchConfig::Mode::Maximize), closed);
    CHECK(std::abs(*r.certified_gap) <= 1e-6);
    // soundness: the best witness reproduces the best value through the
    // exact engine
    const LineSpec& w = std::get<LineSpec>(*r.best_witness);
    CHECK(line_section_length(w, 3).value == Catch::Approx(r.best_value).margin(1e-9));
    CHECK(w.distance_to_origin() == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("line search handles the degenerate grid ends") {
    const SearchReport diameter = search_lines_at_distance(
        2, 0.0, quick_config(SearchConfig::Mode::Maximize), 2.0);
    CHECK(diameter.best_value == Catch::Approx(2.0).margin(1e-6));
    const SearchReport nothing = search_lines_at_distance(
        3, 1.0, quick_config(SearchConfig::Mode::Maximize), 0.0);
    CHECK(nothing.best_value <= 1e-9);
}

TEST_CASE("line search finds the isolated edge-line maximum at the jump point") {
    const double t = 1.0 / std::sqrt(2.0);
    const double closed = max_line_length(3, t).value;  // sqrt(2)
    const SearchReport r = search_lines_at_distance(
        3, t, quick_config(SearchConfig::Mode::Maximize), closed);
    CHECK(r.best_value == Catch::Approx(std::sqrt(2.0)).margin(1e-9));
}

TEST_CASE("line search certifies the minimal formula on spot values") {
    const SearchReport r = search_lines_at_distance(
        3, 0.5, quick_config(SearchConfig::Mode::Minimize), 2.0 - std::sqrt(2.0));
    CHECK(r.best_value >= 2.0 - std::sqrt(2.0) - 1e-9);
    CHECK(r.best_value <= 2.0 - std::sqrt(2.0) + 1e-5);
    // beyond the vanishing distance the minimum is 0 without a witness search
    const SearchReport zero = search_lines_at_distance(
        3, 0.7, quick_config(SearchConfig::Mode::Minimize), 0.0);
    CHECK(zero.best_value == 0.0);
    CHECK_FALSE(zero.best_witness.has_value());
}

TEST_CASE("edge-pair enumeration matches the closed form") {
    SearchConfig cfg = quick_config(SearchConfig::Mode::Maximize);
    const SearchReport a = search_edge_pair_lines(3, 0.6, cfg, max_line_length(3, 0.6).value);
    CHECK(std::abs(*a.certified_gap) <= 1e-6);
    CHECK(a.best_value == Catch::Approx(2.0 / 1.4).margin(1e-6));

    const SearchReport b = search_edge_pair_lines(4, 0.8, cfg, max_line_length(4, 0.8).value);
    CHECK(b.best_value == Catch::Approx(0.4).margin(1e-6));

    const SearchReport c = search_edge_pair_lines(2, 1.0 / std::sqrt(2.0), cfg,
                                                  std::sqrt(2.0));
    CHECK(c.best_value == Catch::Approx(std::sqrt(2.0)).margin(1e-9));

    const SearchReport d = search_edge_pair_lines(3, 0.0, cfg, 2.0);
    CHECK(d.best_value == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("edge-pair witnesses are sound") {
    const SearchReport r = search_edge_pair_lines(3, 0.45,
                                                  quick_config(SearchConfig::Mode::Maximize));
    REQUIRE(r.best_witness.has_value());
    const LineSpec& w = std::get<LineSpec>(*r.best_witness);
    CHECK(line_section_length(w, 3).value == Catch::Approx(r.best_value).margin(1e-9));
    CHECK(w.distance_to_origin() == Catch::Approx(0.45).margin(1e-9));
}

TEST_CASE("hyperplane search certifies the section maximum at coordinate normals") {
    SearchConfig cfg = quick_config(SearchConfig::Mode::Maximize);
    const double closed = max_hyperplane_volume(3, 0.8).value;
    const SearchReport r = search_hyperplanes_at_distance(
        3, 0.8, cfg, HyperplaneObjective::SectionVolume, closed);
    CHECK(std::abs(*r.certified_gap) / closed <= 1e-6);
    const Vec& a = std::get<HyperplaneSpec>(*r.best_witness).normal;
    double amax = 0.0;
    for (double x : a) amax = std::max(amax, std::abs(x));
    CHECK(amax >= 1.0 - 1e-3);
}

TEST_CASE("hyperplane search certifies the slab minimum") {
    SearchConfig cfg = quick_config(SearchConfig::Mode::Minimize);
    const double closed = min_slab_volume(4, 0.75).value;
    CHECK(closed == Catch::Approx((16.0 / 24.0) * (1.0 - std::pow(0.25, 4))).margin(1e-14));
    const SearchReport r = search_hyperplanes_at_distance(
        4, 0.75, cfg, HyperplaneObjective::SlabVolume, closed);
    CHECK(r.best_value >= closed - 1e-9);
    CHECK(std::abs(*r.certified_gap) <= 1e-6);
}

TEST_CASE("simplex line search reproduces both extremes") {
    for (int n : {3, 6}) {
        const auto [mn, mx] = simplex_extremes(n);
        const SearchReport rmin =
            search_simplex_central_lines(n, quick_config(SearchConfig::Mode::Minimize), mn);
        CHECK(std::abs(*rmin.certified_gap) <= 1e-6);
        const SearchReport rmax =
            search_simplex_central_lines(n, quick_config(SearchConfig::Mode::Maximize), mx);
        CHECK(std::abs(*rmax.certified_gap) <= 1e-6);
    }
}

TEST_CASE("searches are deterministic given the seed") {
    const SearchConfig cfg = quick_config(SearchConfig::Mode::Maximize, 77);
    const SearchReport a = search_lines_at_distance(3, 0.4, cfg);
    const SearchReport b = search_lines_at_distance(3, 0.4, cfg);
    CHECK(a.best_value == b.best_value);
    CHECK(a.evaluations == b.evaluations);
    REQUIRE(a.start_values.size() == b.start_values.size());
    for (std::size_t i = 0; i < a.start_values.size(); ++i)
        CHECK(a.start_values[i] == b.start_values[i]);

    const SearchReport h1 = search_hyperplanes_at_distance(
        3, 0.8, cfg, HyperplaneObjective::SectionVolume);
    const SearchReport h2 = search_hyperplanes_at_distance(
        3, 0.8, cfg, HyperplaneObjective::SectionVolume);
    CHECK(h1.best_value == h2.best_value);
}

TEST_CASE("feasible-normal generator respects its constraints") {
    Rng rng(55);
    for (int it = 0; it < 2000; ++it) {
        const int n = 3 + static_cast<int>(rng.uniform01() * 4);
        const double t = rng.uniform(0.72, 0.98);
        const Vec a = random_feasible_normal(n, t, rng);
        CHECK(std::abs(norm(a) - 1.0) <= 1e-12);
        CHECK(a[0] > t);
        const Vec b = scatter_normal(a, rng);
        CHECK(std::abs(norm(b) - 1.0) <= 1e-12);
        double bmax = 0.0;
        for (double x : b) bmax = std::max(bmax, std::abs(x));
        CHECK(bmax == Catch::Approx(a[0]).margin(1e-15));
    }
}
