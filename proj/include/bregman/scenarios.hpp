#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "bregman/common.hpp"
#include "bregman/losses.hpp"
#include "bregman/normal.hpp"
#include "bregman/rng.hpp"
#include "bregman/sample.hpp"

namespace bregman {

// ---------------------------------------------------------------------------
// Latent-uniform scenario: Z ~ Unif(0,1), E[Y|Z] = Z, and two distorted
// predictors
//   X1 = (1-b)/2 + b Z          (linear shrink toward the mean)
//   X2 = Z + q cos(2 pi Z)      (oscillating distortion, ABC-blind)
// Both are positive, increasing in Z, with mean 1/2.
// ---------------------------------------------------------------------------
struct LatentUniformScenario {
    double b = 0.9;
    double q = 0.07;

    void check() const {
        if (!(b > 0.0 && b <= 1.0))
            throw validation_error(validation_error::code::out_of_range, "latent scenario: need 0 < b <= 1");
        if (!(q > 0.0 && q < 1.0 / (2.0 * std::numbers::pi)))
            throw validation_error(validation_error::code::out_of_range,
                                   "latent scenario: need 0 < q < 1/(2 pi)");
    }
};

struct LatentOracles {
    double abc_x1 = 0.0;
    double abc_x2 = 0.0;
    double abc2_x1 = 0.0;
    double abc2_x2 = 0.0;
    double mcb_x1 = 0.0;
    double mcb_x2 = 0.0;
    double gini_x1 = 0.0;
    double gini_x2 = 0.0;
    double var_x1 = 0.0;
    double var_x2 = 0.0;
    double mean = 0.5;
    std::function<double(double)> lc1, lc2, cc, q1, q2;
};

inline LatentOracles latent_oracles(const LatentUniformScenario& sc) {
    sc.check();
    const double b = sc.b;
    const double q = sc.q;
    const double pi = std::numbers::pi;
    LatentOracles o;
    o.abc_x1 = (1.0 - b) / 6.0;
    o.abc_x2 = 0.0;
    o.abc2_x1 = (1.0 - b) * (1.0 - b) / 30.0;
    o.abc2_x2 = q * q / (2.0 * pi * pi);
    o.mcb_x1 = (1.0 - b) * (1.0 - b) / 12.0;
    o.mcb_x2 = q * q / 2.0;
    o.gini_x1 = b / 3.0;
    o.gini_x2 = 1.0 / 3.0;
    o.var_x1 = b * b / 12.0;
    o.var_x2 = 1.0 / 12.0 + q * q / 2.0;
    o.lc1 = [b](double p) { return (1.0 - b) * p + b * p * p; };
    o.lc2 = [q, pi](double p) { return p * p + q * std::sin(2.0 * pi * p) / pi; };
    o.cc = [](double p) { return p * p; };
    o.q1 = [b](double z) { return 2.0 * (1.0 - b) * (-1.0 / 12.0 + z * z / 4.0 - z * z * z / 6.0); };
    o.q2 = [q, pi](double z) { return q * (1.0 - std::cos(2.0 * pi * z)) / (2.0 * pi * pi); };
    return o;
}

enum class NoiseLaw { uniform, sine };

struct LatentSample {
    std::vector<double> z;
    std::vector<double> y;
    std::vector<double> x1;
    std::vector<double> x2;

    PairedSample pair1() const { return PairedSample{y, x1, false, "x1"}; }
    PairedSample pair2() const { return PairedSample{y, x2, false, "x2"}; }
};

// Y = Z + eps with eps symmetric on (-m, m), m = min(Z, 1-Z): any such law
// has E[Y|Z] = Z and keeps Y in [0,1]. Two different laws are provided so
// tests can confirm the statistics depend on Y only through E[Y|Z].
inline LatentSample sample_latent(const LatentUniformScenario& sc, std::size_t n, std::uint64_t seed,
                                  NoiseLaw law = NoiseLaw::uniform) {
    sc.check();
    if (n == 0) throw validation_error(validation_error::code::empty_input, "sample_latent: n must be >= 1");
    const double pi = std::numbers::pi;
    rng gen(seed, 1);
    LatentSample s;
    s.z.resize(n);
    s.y.resize(n);
    s.x1.resize(n);
    s.x2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = gen.uniform();
        const double m = std::min(z, 1.0 - z);
        const double u = gen.uniform();
        const double eps = law == NoiseLaw::uniform ? m * (2.0 * u - 1.0) : m * std::sin(2.0 * pi * u);
        s.z[i] = z;
        s.y[i] = z + eps;
        s.x1[i] = 0.5 * (1.0 - sc.b) + sc.b * z;
        s.x2[i] = z + sc.q * std::cos(2.0 * pi * z);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Shifted log-normal predictors: X = a + LogN(mu, sigma^2) with mu solved
// from (a, sigma, mean).
// ---------------------------------------------------------------------------
struct ShiftedLogNormalSpec {
    double shift = 0.0;
    double sigma = 1.0;
    double mean = 1.0;

    double mu() const { return std::log(mean - shift) - 0.5 * sigma * sigma; }

    void check() const {
        if (!(shift >= 0.0) || !(sigma > 0.0) || !(mean > shift))
            throw validation_error(validation_error::code::out_of_range,
                                   "lognormal spec: need shift >= 0, sigma > 0, mean > shift");
    }
};

inline ShiftedLogNormalSpec example5_x1() { return {7.5, 2.0, 10.0}; }
inline ShiftedLogNormalSpec example5_x2() { return {5.0, 1.0, 10.0}; }

struct LogNormalOracles {
    double mean = 0.0;
    double var = 0.0;
    double gini = 0.0;
    std::function<double(double)> lorenz;       // p in [0,1]
    std::function<double(double)> cdf;          // t >= 0
    std::function<double(double)> stop_loss;    // E[(X - t)+]
    std::function<double(double)> murphy_disc;  // M_t(X, E[X])
};

inline LogNormalOracles lognormal_oracles(const ShiftedLogNormalSpec& spec) {
    spec.check();
    const double a = spec.shift;
    const double s = spec.sigma;
    const double m = spec.mean;
    const double mu = spec.mu();
    const double em = m - a;  // = exp(mu + s^2/2)
    LogNormalOracles o;
    o.mean = m;
    o.var = em * em * (std::exp(s * s) - 1.0);
    o.gini = em / m * (2.0 * norm_cdf(s / std::sqrt(2.0)) - 1.0);
    o.lorenz = [a, em, m, s](double p) {
        if (p <= 0.0) return 0.0;
        if (p >= 1.0) return 1.0;
        return (a * p + em * norm_cdf(norm_quantile(p) - s)) / m;
    };
    o.cdf = [a, mu, s](double t) { return t <= a ? 0.0 : norm_cdf((std::log(t - a) - mu) / s); };
    o.stop_loss = [a, em, mu, s, m](double t) {
        if (t <= a) return m - t;
        const double k = t - a;
        const double d1 = (mu + s * s - std::log(k)) / s;
        const double d2 = (mu - std::log(k)) / s;
        return em * norm_cdf(d1) - k * norm_cdf(d2);
    };
    o.murphy_disc = [o, m](double t) { return o.stop_loss(t) - std::max(m - t, 0.0); };
    return o;
}

inline std::vector<double> sample_lognormal(const ShiftedLogNormalSpec& spec, std::size_t n,
                                            std::uint64_t seed, std::uint64_t stream = 2) {
    spec.check();
    rng gen(seed, stream);
    std::vector<double> x(n);
    const double mu = spec.mu();
    for (std::size_t i = 0; i < n; ++i) x[i] = spec.shift + gen.lognormal(mu, spec.sigma);
    return x;
}

// Calibrated pair: Y = X * G with G ~ Gamma(kappa, 1/kappa), so E[Y|X] = X.
inline PairedSample sample_lognormal_calibrated(const ShiftedLogNormalSpec& spec, std::size_t n,
                                                std::uint64_t seed, std::uint64_t stream = 3) {
    const auto x = sample_lognormal(spec, n, seed, stream);
    rng gen(seed, stream + 17);
    const double kappa = 10.0;
    PairedSample s;
    s.x = x;
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.y[i] = x[i] * gen.gamma(kappa, 1.0 / kappa);
    s.calibrated = true;
    return s;
}

// ---------------------------------------------------------------------------
// Weighted-score counterexample: E[Y|Z] = Z, Var[Y|Z] = phi Z^p, and the
// predictors X1 = Z (exact) and X2 = 1 - Z (anti-correlated). The weighted
// score with weight F_X(X) prefers X2. Exact values by direct integration:
//   S_w(Y, X1) = phi/(p+2)
//   S_w(Y, X2) = phi (1/(p+1) - 1/(p+2)) + 1/6
// (the constant 1/6 is integral (2z-1)^2 (1-z) dz on (0,1)).
// ---------------------------------------------------------------------------
struct WeightedCounterexampleSpec {
    double phi = 4.0;
    double p = 1.0;

    void check() const {
        if (!(phi > 0.0) || !(p >= 0.0))
            throw validation_error(validation_error::code::out_of_range,
                                   "weighted counterexample: need phi > 0, p >= 0");
    }
};

struct WeightedOracles {
    double weighted_score_x1 = 0.0;
    double weighted_score_x2 = 0.0;
    double score_x1 = 0.0;  // unweighted squared-loss scores
    double score_x2 = 0.0;
};

inline WeightedOracles weighted_oracles(const WeightedCounterexampleSpec& sc) {
    sc.check();
    WeightedOracles o;
    o.weighted_score_x1 = sc.phi / (sc.p + 2.0);
    o.weighted_score_x2 = sc.phi * (1.0 / (sc.p + 1.0) - 1.0 / (sc.p + 2.0)) + 1.0 / 6.0;
    o.score_x1 = sc.phi / (sc.p + 1.0);
    o.score_x2 = sc.phi / (sc.p + 1.0) + 1.0 / 3.0;
    return o;
}

struct WeightedSample {
    std::vector<double> z;
    std::vector<double> y;
    std::vector<double> x1;
    std::vector<double> x2;

    PairedSample pair1() const { return PairedSample{y, x1, false, "x1"}; }
    PairedSample pair2() const { return PairedSample{y, x2, false, "x2"}; }
};

// Y | Z ~ Gamma matched to mean Z and variance phi Z^p.
inline WeightedSample sample_weighted(const WeightedCounterexampleSpec& sc, std::size_t n,
                                      std::uint64_t seed) {
    sc.check();
    rng gen(seed, 4);
    WeightedSample s;
    s.z.resize(n);
    s.y.resize(n);
    s.x1.resize(n);
    s.x2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = gen.uniform();
        const double shape = std::pow(z, 2.0 - sc.p) / sc.phi;
        const double scale = sc.phi * std::pow(z, sc.p - 1.0);
        s.z[i] = z;
        s.y[i] = gen.gamma(shape, scale);
        s.x1[i] = z;
        s.x2[i] = 1.0 - z;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Discrimination ratio DSC(Y,X1)/DSC(Y,X2) over Tweedie powers for the two
// shifted log-normal predictors, with DSC under mean-calibration:
// DSC_p(X) = mean phi_p(x) - phi_p(mean x).
// ---------------------------------------------------------------------------
struct DscRatioPoint {
    double p = 0.0;
    double dsc1 = 0.0;
    double dsc2 = 0.0;
    double ratio = 0.0;
};

inline std::vector<DscRatioPoint> example7_dsc_ratio(std::span<const double> p_grid, std::size_t n,
                                                     std::uint64_t seed) {
    const auto x1 = sample_lognormal(example5_x1(), n, seed, 5);
    const auto x2 = sample_lognormal(example5_x2(), n, seed, 6);
    std::vector<DscRatioPoint> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) {
        const auto gen = tweedie_generator({p});
        auto dsc = [&](std::span<const double> col) {
            stable_sum acc;
            for (double v : col) acc.add(gen.eval(v));
            return acc.value() / static_cast<double>(col.size()) - gen.eval(mean(col));
        };
        DscRatioPoint pt;
        pt.p = p;
        pt.dsc1 = dsc(x1);
        pt.dsc2 = dsc(x2);
        pt.ratio = pt.dsc1 / pt.dsc2;
        out.push_back(pt);
    }
    return out;
}

}  // namespace bregman
