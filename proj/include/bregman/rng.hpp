#pragma once

#include <cmath>
#include <cstdint>

#include "bregman/normal.hpp"

namespace bregman {

// Deterministic random stream. Transforms are written out explicitly
// (instead of the <random> distribution classes, whose output is
// implementation-defined) so that a (seed, stream) pair reproduces the
// same draws everywhere.
class rng {
  public:
    explicit rng(std::uint64_t seed, std::uint64_t stream = 0) : state_(splitmix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {
        // warm up: xorshift-style generators start slowly from sparse seeds
        for (int i = 0; i < 8; ++i) next_u64();
    }

    std::uint64_t next_u64() {
        // splitmix64: the state advances by the golden-ratio increment
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0,1): 53-bit mantissa, offset to avoid exact 0.
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via inverse CDF: monotone in the uniform draw.
    double normal() { return norm_quantile(uniform()); }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    // Gamma(shape, scale), Marsaglia-Tsang; shape boost for shape < 1.
    double gamma(double shape, double scale) {
        if (shape <= 0.0 || scale <= 0.0)
            throw validation_error(validation_error::code::out_of_range, "gamma: shape/scale must be > 0");
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

  private:
    static std::uint64_t splitmix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace bregman
