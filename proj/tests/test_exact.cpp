#include <catch2/catch_amalgamated.hpp>

#include "crosssec/closed_forms.hpp"
#include "crosssec/exact.hpp"
#include "crosssec/rng.hpp"
#include "crosssec/search.hpp"

using namespace crosssec;

namespace {

// Brute-force oracle for chords of the regular simplex conv{e_1..e_n}: walk
// the line through x and the centroid in both directions until a coordinate
// goes negative, bisect the exit points, and measure.
double simplex_chord_by_clipping(const Vec& x, int n) {
    Vec z(static_cast<std::size_t>(n), 1.0 / n);
    const Vec d = normalized(sub(z, x));
    auto inside = [&](double s) {
        for (int i = 0; i < n; ++i)
            if (x[static_cast<std::size_t>(i)] + s * d[static_cast<std::size_t>(i)] < -1e-14)
                return false;
        return true;
    };
    auto exit_point = [&](double dir) {
        double lo = 0.0, hi = dir * 4.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (inside(mid))
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    };
    return std::abs(exit_point(1.0) - exit_point(-1.0));
}

LineSpec line_through(const Vec& a, const Vec& b) { return canonicalize_line(a, b); }

}  // namespace

TEST_CASE("line sections: chords of the cross-polytope") {
    // longest chord, between opposite vertices
    CHECK(line_section_length(line_through({1, 0, 0}, {-1, 0, 0}), 3).value ==
          Catch::Approx(2.0).margin(1e-14));
    // an edge of the planar cross-polytope is a full face chord
    CHECK(line_section_length(line_through({1, 0}, {0, 1}), 2).value ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    // axis-parallel cut near a vertex
    CHECK(line_section_length(LineSpec{{0.9, 0, 0}, {0, 1, 0}}, 3).value ==
          Catch::Approx(0.2).margin(1e-14));
}

TEST_CASE("line sections: extremal-line construction at distance 1/2 in R^3") {
    // segment between (1-theta)u_1 +- theta v_1 with theta = t sqrt(2), t = 1/2
    const double t = 0.5;
    const double theta = t * std::sqrt(2.0);
    const DiamondData dd = make_diamond_data(3, 1);
    const Vec a = add(scaled(dd.u, 1.0 - theta), scaled(dd.v, theta));
    const Vec b = add(scaled(dd.u, theta - 1.0), scaled(dd.v, theta));
    CHECK(line_distance_to_origin(a, b) == Catch::Approx(t).margin(1e-15));
    CHECK(line_section_length(line_through(a, b), 3).value ==
          Catch::Approx(2.0 - std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("line sections: empty and tangent lines") {
    const SectionResult missed =
        line_section_length(LineSpec{{2.0, 0, 0}, {0, 1, 0}}, 3);
    CHECK(missed.value == 0.0);
    CHECK_FALSE(missed.tangent);

    // line touching a vertex only
    const SectionResult touch = line_section_length(LineSpec{{1.0, 0, 0}, {0, 1, 0}}, 3);
    CHECK(touch.value == 0.0);
    CHECK(touch.tangent);

    // line inside a facet plane through the facet centroid: a genuine chord
    const double r = 1.0 / std::sqrt(3.0);
    const Vec base{r / std::sqrt(3.0), r / std::sqrt(3.0), r / std::sqrt(3.0)};
    const Vec dir{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
    const SectionResult facet = line_section_length(LineSpec{base, dir}, 3);
    CHECK_FALSE(facet.tangent);
    CHECK(facet.value == Catch::Approx(2.0 * std::sqrt(2.0) / 3.0).margin(1e-12));
}

TEST_CASE("line sections are concave along parallel families") {
    Rng rng(201);
    int checked = 0;
    while (checked < 1000) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 4);
        const Vec d = rng.unit_vector(n);
        Vec u = rng.unit_vector(n);
        u = sub(u, scaled(d, dot(u, d)));
        if (norm(u) < 1e-6) continue;
        u = normalized(u);
        const double l1 = rng.uniform(-0.5, 0.5), l2 = rng.uniform(-0.5, 0.5);
        auto len = [&](double lam) {
            return line_section_length(LineSpec{scaled(u, lam), d}, n).value;
        };
        const double f1 = len(l1), f2 = len(l2);
        if (f1 <= 0.0 || f2 <= 0.0) continue;
        CHECK(len(0.5 * (l1 + l2)) >= 0.5 * (f1 + f2) - 1e-9);
        ++checked;
    }
}

TEST_CASE("chopped pyramid volume") {
    // axis normal: independent route is the cone over the square section,
    // (1/3) * 2(1-t)^2 * (1-t) in R^3
    const ChoppedPyramid c = make_chopped_pyramid(HyperplaneSpec{{1, 0, 0}, 0.8}, 3);
    CHECK(chopped_volume(c) == Catch::Approx(2.0 / 3.0 * 0.008).margin(1e-15));

    // tilted normal, frozen against the Monte Carlo oracle (see the Monte
    // Carlo suite for the 3-sigma check of the same configuration)
    const Vec a{0.9, 0.3, std::sqrt(0.1)};
    const ChoppedPyramid c2 = make_chopped_pyramid(HyperplaneSpec{a, 0.75}, 3);
    CHECK(chopped_volume(c2) == Catch::Approx(0.0039612676056338045).margin(1e-12));

    // chop vanishes as t approaches the leading coordinate
    const ChoppedPyramid c3 = make_chopped_pyramid(HyperplaneSpec{a, 0.9 - 1e-13}, 3);
    CHECK(chopped_volume(c3) == 0.0);

    CHECK_THROWS_AS(make_chopped_pyramid(HyperplaneSpec{{1, 0, 0}, 0.5}, 3),
                    std::domain_error);
    // conditioning guard: two tied leading coordinates only arise off-regime
    ChoppedPyramid bad;
    bad.dim = 3;
    bad.normal = {0.75, 0.75, std::sqrt(1.0 - 2 * 0.75 * 0.75)};
    bad.offset = 0.72;
    CHECK_THROWS_AS(chopped_volume(bad), std::domain_error);
}

TEST_CASE("chopped pyramid canonicalization records the transform") {
    const Vec a{-0.3, std::sqrt(0.1), -0.9};
    const ChoppedPyramid c = make_chopped_pyramid(HyperplaneSpec{a, 0.75}, 3);
    CHECK_FALSE(c.empty);
    CHECK(c.normal[0] == Catch::Approx(0.9).margin(1e-15));
    CHECK(c.perm[0] == 2);
    CHECK(c.signs[0] == -1.0);
    // same volume as the canonical configuration
    const ChoppedPyramid ref = make_chopped_pyramid(HyperplaneSpec{{0.9, 0.3, std::sqrt(0.1)}, 0.75}, 3);
    CHECK(chopped_volume(c) == Catch::Approx(chopped_volume(ref)).margin(1e-15));
}

TEST_CASE("hyperplane section volume") {
    CHECK(hyperplane_section_volume(HyperplaneSpec{{1, 0, 0}, 0.8}, 3).value ==
          Catch::Approx(0.08).margin(1e-15));
    CHECK(hyperplane_section_volume(HyperplaneSpec{{0, 1, 0, 0}, 0.9}, 4).value ==
          Catch::Approx(8.0 * 0.001 / 6.0).margin(1e-15));
    // frozen against the in-plane Monte Carlo oracle
    CHECK(hyperplane_section_volume(HyperplaneSpec{{0.9, 0.3, std::sqrt(0.1)}, 0.75}, 3).value ==
          Catch::Approx(0.07922535211267605).margin(1e-12));
    // tangent at the vertex
    const SectionResult tangent = hyperplane_section_volume(HyperplaneSpec{{1, 0, 0}, 1.0}, 3);
    CHECK(tangent.value == 0.0);
    CHECK(tangent.tangent);
    // missing the body entirely
    const Vec far{std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)};
    const SectionResult miss = hyperplane_section_volume(HyperplaneSpec{far, 0.99}, 3);
    CHECK(miss.value == 0.0);
    CHECK_FALSE(miss.tangent);

    CHECK_THROWS_AS(hyperplane_section_volume(HyperplaneSpec{{1, 0, 0}, 0.6}, 3),
                    std::domain_error);
    CHECK_THROWS_AS(hyperplane_section_volume(HyperplaneSpec{{1, 0}, 0.8}, 2),
                    std::invalid_argument);
}

TEST_CASE("hyperplane section volume is permutation and sign invariant") {
    Rng rng(202);
    for (int it = 0; it < 300; ++it) {
        const int n = 3 + static_cast<int>(rng.uniform01() * 3);
        const double t = rng.uniform(0.72, 0.95);
        const Vec a = random_feasible_normal(n, t, rng);
        const double ref = hyperplane_section_volume(HyperplaneSpec{a, t}, n).value;
        const Vec b = scatter_normal(a, rng);
        CHECK(hyperplane_section_volume(HyperplaneSpec{b, t}, n).value ==
              Catch::Approx(ref).margin(1e-12));
    }
}

TEST_CASE("pyramid height identity links the two volumes") {
    Rng rng(203);
    for (int it = 0; it < 1000; ++it) {
        const int n = 3 + static_cast<int>(rng.uniform01() * 4);
        const double t = rng.uniform(0.72, 0.95);
        const Vec a = random_feasible_normal(n, t, rng);
        const ChoppedPyramid c = make_chopped_pyramid(HyperplaneSpec{a, t}, n);
        if (c.empty) continue;
        const double lhs = n * chopped_volume(c);
        const double rhs =
            hyperplane_section_volume(HyperplaneSpec{a, t}, n).value * (c.normal[0] - t);
        CHECK(lhs == Catch::Approx(rhs).margin(1e-12));
    }
}

TEST_CASE("slab volume") {
    CHECK(slab_volume(SlabSpec{{1, 0, 0}, 0.8}, 3).value ==
          Catch::Approx(8.0 / 6.0 * (1.0 - 0.008)).margin(1e-15));
    CHECK(slab_volume(SlabSpec{{0.9, 0.3, std::sqrt(0.1)}, 1.0}, 3).value ==
          Catch::Approx(8.0 / 6.0).margin(1e-15));
    CHECK(slab_volume(SlabSpec{{0.9, 0.3, std::sqrt(0.1)}, 0.75}, 3).value ==
          Catch::Approx(4.0 / 3.0 - 2 * 0.0039612676056338045).margin(1e-12));
    // slab swallowing the whole body
    const Vec spread{std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)};
    CHECK(slab_volume(SlabSpec{spread, 0.99}, 3).value ==
          Catch::Approx(8.0 / 6.0).margin(1e-15));
    CHECK_THROWS_AS(slab_volume(SlabSpec{{1, 0, 0}, 0.5}, 3), std::domain_error);
}

TEST_CASE("simplex central line length") {
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    CHECK(simplex_central_line_length({1 / s2, -1 / s2, 0}, 3) ==
          Catch::Approx(2 * s2 / 3).margin(1e-14));
    CHECK(simplex_central_line_length({2 / s6, -1 / s6, -1 / s6}, 3) ==
          Catch::Approx(s6 / 2).margin(1e-14));
    CHECK(simplex_central_line_length({1 / s2, -1 / s2, 0, 0}, 4) ==
          Catch::Approx(2 * s2 / 4).margin(1e-14));
    CHECK_THROWS_AS(simplex_central_line_length({1, 0, 0}, 3), std::invalid_argument);
}

TEST_CASE("simplex chord through the centroid") {
    CHECK(simplex_chord_through_centroid({1, 0, 0}, 3) ==
          Catch::Approx(std::sqrt(1.5)).margin(1e-14));
    CHECK(simplex_chord_through_centroid({0.5, 0.5, 0}, 3) ==
          Catch::Approx(std::sqrt(1.5)).margin(1e-14));
    // frozen via the clipping oracle below
    CHECK(simplex_chord_through_centroid({0.7, 0.3, 0}, 3) ==
          Catch::Approx(0.9481604634569035).margin(1e-12));
    CHECK_THROWS_AS(simplex_chord_through_centroid({0.7, 0.3, 0.0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(simplex_chord_through_centroid({0.5, 0.6, 0}, 3), std::invalid_argument);
}

TEST_CASE("simplex chord agrees with the clipping oracle") {
    Rng rng(204);
    for (int it = 0; it < 500; ++it) {
        const int n = 3 + static_cast<int>(rng.uniform01() * 4);
        Vec x(static_cast<std::size_t>(n), 0.0);
        double total = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            x[static_cast<std::size_t>(i)] = rng.exponential();
            total += x[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n - 1; ++i) x[static_cast<std::size_t>(i)] /= total;
        double mx = 0.0;
        for (int i = 0; i < n - 1; ++i) mx = std::max(mx, x[static_cast<std::size_t>(i)]);
        if (n * mx - 1.0 < 1e-3) continue;  // nearly parallel chord: oracle brackets blow up
        CHECK(simplex_chord_through_centroid(x, n) ==
              Catch::Approx(simplex_chord_by_clipping(x, n)).margin(1e-9));
    }
}

TEST_CASE("isosceles triangle minimal chord") {
    CHECK(isosceles_min_chord(1.0, 1.0, 0.0) == 2.0);
    CHECK(isosceles_min_chord(1.0, 1.0, 1.0 / std::sqrt(2.0)) ==
          Catch::Approx(2.0 * (1.0 - 1.0 / std::sqrt(2.0))).margin(1e-14));
    CHECK(isosceles_min_chord(1.0, 1.0 / std::sqrt(2.0), 0.5) ==
          Catch::Approx(2.0 - std::sqrt(2.0)).margin(1e-14));
    CHECK_THROWS_AS(isosceles_min_chord(1.0, 1.0, 0.9), std::invalid_argument);
}

TEST_CASE("the base-parallel chord minimizes over tilts") {
    Rng rng(205);
    for (int it = 0; it < 2000; ++it) {
        const double u = rng.uniform(0.2, 2.0);
        const double v = rng.uniform(0.2, 2.0);
        const double tmax = u * v / std::sqrt(u * u + v * v);
        const double t = rng.uniform01() * tmax * 0.999;
        const double alpha = std::atan2(u, v);
        const double theta = rng.uniform01() * (M_PI / 2.0 - alpha) * 0.999;
        const double tilted = isosceles_tilted_chord(u, v, t, theta);
        const double flat = isosceles_min_chord(u, v, t);
        CHECK(tilted >= flat - 1e-12);
        if (theta > 1e-3) CHECK(tilted > flat);
        CHECK(isosceles_tilted_chord(u, v, t, 0.0) == Catch::Approx(flat).margin(1e-12));
    }
}
