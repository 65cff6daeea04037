#include <catch2/catch_amalgamated.hpp>

#include "crosssec/core.hpp"
#include "crosssec/rng.hpp"

using namespace crosssec;

namespace {

// Independent oracle: distance of the line through p1, p2 to the origin by
// projecting the origin onto the line (never via the Gram-determinant form).
double distance_by_projection(const Vec& p1, const Vec& p2) {
    const Vec d = normalized(sub(p2, p1));
    const Vec foot = sub(p1, scaled(d, dot(p1, d)));
    return norm(foot);
}

Vec random_point(Rng& rng, int n, double scale = 1.0) {
    Vec v(static_cast<std::size_t>(n));
    for (double& x : v) x = scale * (2.0 * rng.uniform01() - 1.0);
    return v;
}

Vec apply_signed_perm(const Vec& x, const std::vector<int>& perm, const Vec& signs) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = signs[i] * x[static_cast<std::size_t>(perm[i])];
    return out;
}

}  // namespace

TEST_CASE("l1 norm basics") {
    CHECK(l1_norm({1.0, 0.0, 0.0}) == 1.0);
    CHECK(l1_norm({0.5, -0.5, 0.0}) == 1.0);
    CHECK(l1_norm({0.2, 0.3, -0.1}) == Catch::Approx(0.6).margin(1e-15));
    CHECK_THROWS_AS(l1_norm({1.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(l1_norm({std::nan(""), 0.0}), std::invalid_argument);
}

TEST_CASE("line distance to origin") {
    CHECK(line_distance_to_origin({1, 0, 0}, {0, 1, 0}) ==
          Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    CHECK(line_distance_to_origin({1, 0, 0}, {-1, 0, 0}) == 0.0);
    // frozen via the projection oracle: 1/sqrt(5)
    CHECK(line_distance_to_origin({1, 0, 0}, {0, 0.5, 0}) ==
          Catch::Approx(0.44721359549995793).margin(1e-12));
    CHECK_THROWS_AS(line_distance_to_origin({1, 0, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("line distance agrees with projection oracle") {
    Rng rng(101);
    for (int it = 0; it < 10000; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5);
        const Vec p1 = random_point(rng, n, 2.0);
        Vec p2 = random_point(rng, n, 2.0);
        if (norm(sub(p1, p2)) < 1e-6) continue;
        const double lhs = line_distance_to_origin(p1, p2);
        CHECK(lhs == Catch::Approx(distance_by_projection(p1, p2)).margin(1e-12));
    }
}

TEST_CASE("small-distance bound for opposed unit-ball points") {
    // For |x|,|y| <= 1 with <x,y> <= 0, the line through x and y passes
    // within 1/sqrt(2) of the origin.
    Rng rng(102);
    int checked = 0;
    while (checked < 10000) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5);
        Vec x = scaled(rng.unit_vector(n), rng.uniform01());
        Vec y = scaled(rng.unit_vector(n), rng.uniform01());
        if (dot(x, y) > 0.0) y = scaled(y, -1.0);
        if (norm(sub(x, y)) < 1e-9) continue;
        CHECK(line_distance_to_origin(x, y) <= 1.0 / std::sqrt(2.0) + 1e-12);
        ++checked;
    }
}

TEST_CASE("canonicalize line") {
    const LineSpec axis = canonicalize_line({1, 0, 0}, {-1, 0, 0});
    CHECK(norm(axis.base) == 0.0);
    CHECK(axis.dir == Vec{1, 0, 0});

    const LineSpec edge = canonicalize_line({1, 0, 0}, {0, 1, 0});
    CHECK(edge.base[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(edge.base[1] == Catch::Approx(0.5).margin(1e-15));
    CHECK(edge.base[2] == 0.0);
    // sign convention: first nonzero direction coordinate is positive
    CHECK(edge.dir[0] == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    CHECK(edge.dir[1] == Catch::Approx(-1.0 / std::sqrt(2.0)).margin(1e-15));

    CHECK_THROWS_AS(canonicalize_line({1, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("canonicalization is idempotent and stores the distance") {
    Rng rng(103);
    for (int it = 0; it < 10000; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5);
        const Vec p1 = random_point(rng, n, 2.0);
        Vec p2 = random_point(rng, n, 2.0);
        if (norm(sub(p1, p2)) < 1e-6) continue;
        const LineSpec line = canonicalize_line(p1, p2);
        CHECK(std::abs(norm(line.dir) - 1.0) <= 1e-12);
        CHECK(std::abs(dot(line.base, line.dir)) <= 1e-12);
        CHECK(norm(line.base) ==
              Catch::Approx(line_distance_to_origin(p1, p2)).margin(1e-12));
        const LineSpec again = canonicalize_line(line);
        for (int i = 0; i < n; ++i) {
            CHECK(again.base[static_cast<std::size_t>(i)] ==
                  Catch::Approx(line.base[static_cast<std::size_t>(i)]).margin(1e-12));
            CHECK(again.dir[static_cast<std::size_t>(i)] ==
                  Catch::Approx(line.dir[static_cast<std::size_t>(i)]).margin(1e-12));
        }
    }
}

TEST_CASE("block-mean projection") {
    CHECK(project_block_means({1, 0, 0}, 1) == Vec{1, 0, 0});
    const Vec q = project_block_means({0, 1, 0}, 1);
    CHECK(q[0] == 0.0);
    CHECK(q[1] == Catch::Approx(0.5).margin(1e-15));
    CHECK(q[2] == Catch::Approx(0.5).margin(1e-15));
    const Vec q2 = project_block_means({1, 0, 0, 0}, 2);
    CHECK(q2[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(q2[1] == Catch::Approx(0.5).margin(1e-15));
    CHECK(q2[2] == 0.0);
    CHECK_THROWS_AS(project_block_means({1, 0, 0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(project_block_means({1, 0, 0}, 3), std::invalid_argument);
}

TEST_CASE("block-mean projection is idempotent and norm-nonincreasing") {
    Rng rng(104);
    for (int it = 0; it < 2000; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5);
        const int k = 1 + static_cast<int>(rng.uniform01() * (n - 1));
        const Vec x = random_point(rng, n, 3.0);
        const Vec px = project_block_means(x, k);
        const Vec ppx = project_block_means(px, k);
        CHECK(norm(sub(px, ppx)) <= 1e-12);
        CHECK(norm(px) <= norm(x) + 1e-12);
    }
}

TEST_CASE("coordinate symmetry of the basic operations") {
    Rng rng(105);
    for (int it = 0; it < 2000; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(static_cast<int>(rng.uniform01() * (i + 1)))]);
        Vec signs(static_cast<std::size_t>(n));
        for (double& s : signs) s = rng.sign();

        const Vec x = random_point(rng, n, 2.0);
        Vec y = random_point(rng, n, 2.0);
        if (norm(sub(x, y)) < 1e-6) continue;
        CHECK(l1_norm(apply_signed_perm(x, perm, signs)) ==
              Catch::Approx(l1_norm(x)).margin(1e-12));
        CHECK(line_distance_to_origin(apply_signed_perm(x, perm, signs),
                                      apply_signed_perm(y, perm, signs)) ==
              Catch::Approx(line_distance_to_origin(x, y)).margin(1e-12));
    }
}

TEST_CASE("cross-polytope volume") {
    CHECK(cross_polytope_volume(1) == 2.0);
    CHECK(cross_polytope_volume(3) == Catch::Approx(4.0 / 3.0).margin(1e-15));
    CHECK(cross_polytope_volume(5) == Catch::Approx(32.0 / 120.0).margin(1e-15));
}
