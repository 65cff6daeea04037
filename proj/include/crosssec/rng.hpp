#pragma once

// Seedable, portable random number generation.  The raw stream is
// std::mt19937_64 (bit-exact across platforms by the standard); every
// distribution here is derived from it by fixed arithmetic rather than
// through std::*_distribution, whose sequences are implementation-defined:
//   uniform01: (raw >> 11) * 2^-53                     in [0, 1)
//   exponential: -log1p(-uniform01())
//   gaussian: Box-Muller on consecutive uniform pairs (second value cached)

#include <cmath>
#include <cstdint>
#include <random>

#include "crosssec/core.hpp"

namespace crosssec {

/// Mix a base seed with a stream index (splitmix64 finalizer), so per-start
/// and per-batch substreams are reproducible regardless of execution order.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double exponential() { return -std::log1p(-uniform01()); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u;
        do {
            u = uniform01();
        } while (u <= 0.0);
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * M_PI * v);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * v);
    }

    Vec gaussian_vector(int n) {
        Vec v(static_cast<std::size_t>(n));
        for (double& x : v) x = gaussian();
        return v;
    }

    Vec unit_vector(int n) {
        Vec v;
        double len = 0.0;
        do {
            v = gaussian_vector(n);
            len = norm(v);
        } while (len < 1e-12);
        return scaled(v, 1.0 / len);
    }

    double sign() { return uniform01() < 0.5 ? -1.0 : 1.0; }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace crosssec
