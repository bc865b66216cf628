#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mixlab/errors.hpp"

namespace mixlab {

// All randomness flows through this wrapper so that a (seed, stream_id) pair
// pins the full draw sequence on any platform. mt19937_64 is bit-exact by
// standard; the distributions below are hand-rolled because the std::
// distribution objects are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Child stream: hash of (seed, stream_id). Distinct ids give streams that
    // never share the parent's state, so replications can run out of order.
    Rng stream(std::uint64_t stream_id) const {
        std::uint64_t x = seed_ ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1));
        return Rng(splitmix64(x));
    }

    std::uint64_t next_u64() { return engine_(); }

    bool fair_bit() { return (engine_() >> 63) != 0; }

    // Uniform on {0,...,bound-1} by mask rejection (no modulo bias).
    std::uint64_t uniform_index(std::uint64_t bound) {
        if (bound == 0) throw BadParams("uniform_index: bound must be positive");
        if (bound == 1) return 0;
        std::uint64_t mask = ~std::uint64_t(0) >> count_leading_zeros(bound - 1);
        for (;;) {
            std::uint64_t x = engine_() & mask;
            if (x < bound) return x;
        }
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal, Box-Muller; consumes exactly two uniforms per call.
    double gauss() {
        double u1 = 1.0 - uniform01();  // (0,1], keeps log finite
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double gauss(double mean, double sd) { return mean + sd * gauss(); }

    // Poisson. Knuth product method is fine while e^{-lambda} stays well above
    // denormal range; larger means split (sum of independent Poissons).
    std::uint64_t poisson(double lambda) {
        if (lambda < 0) throw BadParams("poisson: negative mean");
        std::uint64_t total = 0;
        while (lambda > 60.0) {
            total += poisson_knuth(30.0);
            lambda -= 30.0;
        }
        return total + poisson_knuth(lambda);
    }

    // Geometric on {1,2,...}: P(L = l) = p (1-p)^{l-1}.
    std::uint64_t geometric_ge1(double p) {
        if (!(p > 0.0 && p <= 1.0)) throw BadParams("geometric_ge1: p outside (0,1]");
        if (p == 1.0) return 1;
        double u = uniform01();
        double l = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
        if (l < 1.0) l = 1.0;
        return std::uint64_t(l);
    }

    std::uint64_t binomial(std::uint64_t k, double p) {
        std::uint64_t c = 0;
        for (std::uint64_t i = 0; i < k; ++i) c += (uniform01() < p) ? 1 : 0;
        return c;
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    static int count_leading_zeros(std::uint64_t x) {
        int n = 0;
        while (!(x & 0x8000000000000000ULL)) {
            x <<= 1;
            ++n;
            if (n == 64) break;
        }
        return n;
    }

    std::uint64_t poisson_knuth(double lambda) {
        if (lambda <= 0.0) return 0;
        double limit = std::exp(-lambda);
        double prod = 1.0;
        std::uint64_t k = 0;
        do {
            prod *= uniform01();
            ++k;
        } while (prod > limit);
        return k - 1;
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace mixlab
