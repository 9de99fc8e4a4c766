#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bregman/curves.hpp"
#include "bregman/decomp.hpp"
#include "bregman/rng.hpp"
#include "oracles.hpp"

using namespace bregman;
using Catch::Approx;

namespace {

std::vector<MixingMeasure::Atom> random_atoms(rng& gen, double hi) {
    std::vector<MixingMeasure::Atom> atoms;
    const int k = 1 + static_cast<int>(gen.uniform() * 5);
    for (int j = 0; j < k; ++j) atoms.push_back({gen.uniform(0.01, hi), gen.uniform(0.1, 1.5)});
    return atoms;
}

}  // namespace

TEST_CASE("constant predictor has zero discrimination and miscalibration") {
    rng gen(1, 1);
    std::vector<double> y;
    for (int i = 0; i < 400; ++i) y.push_back(gen.uniform(0.5, 3.0));
    const double ybar = mean(y);
    std::vector<double> x(y.size(), ybar);
    const auto s = make_paired(y, x);
    for (double p : {0.0, 1.0, 2.0}) {
        const auto d = murphy_decomposition(s, tweedie_generator({p}));
        CHECK(d.DSC == Approx(0.0).margin(1e-12));
        CHECK(d.MCB == Approx(0.0).margin(1e-12));
        CHECK(d.S == Approx(d.UNC).epsilon(1e-12));
    }
}

TEST_CASE("recalibrated predictors carry zero miscalibration") {
    rng gen(2, 2);
    std::vector<double> y, x;
    for (int i = 0; i < 500; ++i) {
        const double v = gen.uniform(0.3, 3.0);
        x.push_back(v);
        y.push_back(v * gen.gamma(9.0, 1.0 / 9.0));
    }
    const auto base = make_paired(y, x);
    const auto s = make_paired(y, recalibrate(base).fitted);
    const auto d = murphy_decomposition(s, tweedie_generator({0.0}));
    CHECK(d.MCB == Approx(0.0).margin(1e-12));
    CHECK(d.identity_residual() <= 1e-10 * std::max(1.0, d.S));
}

TEST_CASE("decomposition identity closes exactly on discrete-level samples") {
    rng gen(303, 5);
    int tested = 0;
    while (tested < 40) {
        const auto lvl = oracles::random_level_sample(gen, 2000);
        if (!lvl.level_means_monotone) continue;
        ++tested;
        const auto& s = lvl.sample;
        for (double p : {0.0, 1.0, 2.0, 3.0}) {
            const auto gen_p = tweedie_generator({p});
            const auto d = murphy_decomposition(s, gen_p);
            CHECK(d.identity_residual() <= 1e-10 * std::max(1.0, std::abs(d.S)));
            CHECK(d.DSC >= -1e-12);
            CHECK(d.MCB >= -1e-12);
            const auto fitted = fitted_conditional_mean(s, Recalibration::pav);
            const auto cc = decomposition_cross_check(
                s, [&](double y, double x) { return bregman_loss(gen_p, y, x); }, fitted);
            CHECK(d.DSC == Approx(cc.dsc_classic).margin(1e-10 * std::max(1.0, std::abs(d.S))));
            CHECK(d.MCB == Approx(cc.mcb_classic).margin(1e-10 * std::max(1.0, std::abs(d.S))));
        }
        const auto H = MixingMeasure::from_atoms(random_atoms(gen, 10.0));
        const auto dH = murphy_decomposition(s, H);
        CHECK(dH.identity_residual() <= 1e-10 * std::max(1.0, std::abs(dH.S)));
        CHECK(dH.DSC >= -1e-12);
        CHECK(dH.MCB >= -1e-12);
    }
}

TEST_CASE("with continuous predictors the classic differences stay exact") {
    // pav pools across distinct x values here, so only the telescoping
    // classic form closes; the predictor-only form differs by the within-
    // block coupling and its residual is reported, not hidden
    rng gen(77, 4);
    std::vector<double> y, x;
    for (int i = 0; i < 800; ++i) {
        const double v = gen.uniform(0.2, 4.0);
        x.push_back(v);
        y.push_back(std::max(0.01, v + gen.uniform(-1.0, 1.0)));
    }
    const auto s = make_paired(y, x);
    const auto gen_p = tweedie_generator({0.0});
    const auto fitted = fitted_conditional_mean(s, Recalibration::pav);
    const auto cc = decomposition_cross_check(
        s, [&](double yy, double xx) { return bregman_loss(gen_p, yy, xx); }, fitted);
    const auto d = murphy_decomposition(s, gen_p);
    CHECK(d.S == Approx(d.UNC - cc.dsc_classic + cc.mcb_classic).epsilon(1e-12));
    CHECK(cc.mcb_classic >= d.MCB - 1e-12);  // pooling only ever raises the classic term
    CHECK(cc.dsc_classic == Approx(d.DSC).margin(1e-10 * std::max(1.0, d.S)));
}

TEST_CASE("mse decomposition matches the variance identity") {
    rng gen(404, 2);
    int tested = 0;
    while (tested < 10) {
        const auto lvl = oracles::random_level_sample(gen, 1500);
        if (!lvl.level_means_monotone) continue;
        ++tested;
        const auto& s = lvl.sample;
        const auto fitted = fitted_conditional_mean(s, Recalibration::pav);
        stable_sum se;
        for (std::size_t i = 0; i < s.n(); ++i) se.add((s.y[i] - s.x[i]) * (s.y[i] - s.x[i]));
        const double mse = se.value() / static_cast<double>(s.n());
        CHECK(mse == Approx(variance(s.y) - variance(fitted) + mcb_mse(s)).epsilon(1e-10));
        CHECK(dsc_mse(s) == Approx(variance(fitted)).epsilon(1e-12));
    }
}

TEST_CASE("skill score identities") {
    rng gen(11, 11);
    const auto lvl = [&] {
        for (;;) {
            auto cand = oracles::random_level_sample(gen, 1000);
            if (cand.level_means_monotone) return cand;
        }
    }();
    const auto& s = lvl.sample;
    {
        std::vector<double> cx(s.n(), s.mean_y());
        const auto constant = make_paired(s.y, cx);
        CHECK(skill_score(constant, tweedie_generator({0.0})) == Approx(0.0).margin(1e-12));
    }
    for (double p : {0.0, 1.0, 2.0}) {
        const auto g = tweedie_generator({p});
        const auto d = murphy_decomposition(s, g);
        CHECK(skill_score(s, g) == Approx(d.DSC - d.MCB).margin(1e-12 * std::max(1.0, d.UNC)));
    }
    {
        // calibrated informative predictor: skill equals discrimination
        const auto calibrated = make_paired(s.y, fitted_conditional_mean(s, Recalibration::pav));
        const auto g = tweedie_generator({0.0});
        const auto d = murphy_decomposition(calibrated, g);
        CHECK(d.MCB == Approx(0.0).margin(1e-12));
        CHECK(skill_score(calibrated, g) == Approx(d.DSC).margin(1e-10));
        CHECK(d.DSC > 0.0);
    }
}

TEST_CASE("mixture mcb splits into covariance and integral terms") {
    rng gen(21, 6);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> y, x;
        const int n = 40 + static_cast<int>(gen.uniform() * 200);
        for (int i = 0; i < n; ++i) {
            x.push_back(gen.uniform(0.1, 5.0));
            y.push_back(gen.uniform(0.1, 5.0));
        }
        const auto s = make_paired(y, x);

        // atomic H, including atoms placed exactly on data points
        auto atoms = random_atoms(gen, 5.5);
        atoms.push_back({x[0], 0.7});
        atoms.push_back({x[5], 0.3});
        const auto H = MixingMeasure::from_atoms(atoms);
        const auto m = mcb_via_mixture(s, H);
        CHECK(m.mcb == Approx(m.cov_term + m.integral_term).margin(1e-11 * std::max(1.0, m.mcb)));

        // piecewise-linear H
        const auto HL = MixingMeasure::piecewise_linear({{0.0, 0.0}, {1.5, gen.uniform(0.0, 2.0)}},
                                                        gen.uniform(0.0, 1.0));
        const auto ml = mcb_via_mixture(s, HL);
        CHECK(ml.mcb == Approx(ml.cov_term + ml.integral_term).margin(1e-11 * std::max(1.0, ml.mcb)));
    }
}

TEST_CASE("mixture mcb with slope-two linear measure equals the squared-loss mcb") {
    rng gen(31, 9);
    std::vector<double> y, x;
    for (int i = 0; i < 600; ++i) {
        x.push_back(gen.uniform(0.1, 4.0));
        y.push_back(gen.uniform(0.1, 4.0));
    }
    const auto s = make_paired(y, x);
    const auto m = mcb_via_mixture(s, MixingMeasure::linear(2.0));
    CHECK(m.mcb == Approx(mcb_mse(s)).epsilon(1e-8));
}

TEST_CASE("mixture mcb vanishes for calibrated samples") {
    rng gen(41, 1);
    std::vector<double> y, x;
    for (int i = 0; i < 200; ++i) {
        const double v = gen.uniform(0.2, 3.0);
        x.push_back(v);
        y.push_back(v * gen.gamma(16.0, 1.0 / 16.0));
    }
    auto s = make_paired(y, x);
    s.x = recalibrate(s).fitted;  // now E[Y|X] = X empirically
    const auto m = mcb_via_mixture(s, MixingMeasure::empirical_cdf(s.x));
    CHECK(m.mcb == Approx(0.0).margin(1e-12));
    CHECK(m.cov_term + m.integral_term == Approx(0.0).margin(1e-12));
}

TEST_CASE("curve-level components integrate to the scalar decomposition") {
    // for atomic H, integrating the three murphy-curve components against
    // dH reproduces UNC/DSC/MCB exactly (finite Fubini)
    rng gen(71, 2);
    const auto lvl = [&] {
        for (;;) {
            auto cand = oracles::random_level_sample(gen, 600);
            if (cand.level_means_monotone) return cand;
        }
    }();
    const auto& s = lvl.sample;
    const auto fitted = fitted_conditional_mean(s, Recalibration::pav);
    const double ybar = s.mean_y();

    std::vector<MixingMeasure::Atom> atoms;
    for (int j = 0; j < 6; ++j) atoms.push_back({gen.uniform(0.01, 9.0), gen.uniform(0.2, 1.5)});
    const auto H = MixingMeasure::from_atoms(atoms);
    const auto d = murphy_decomposition(s, H);

    stable_sum unc, dsc, mcb;
    for (const auto& a : H.atoms()) {
        stable_sum mu_unc, mu_dsc, mu_mcb;
        for (std::size_t i = 0; i < s.n(); ++i) {
            mu_unc.add(elementary_loss(a.theta, s.y[i], ybar));
            mu_dsc.add(elementary_loss(a.theta, fitted[i], ybar));
            mu_mcb.add(elementary_loss(a.theta, fitted[i], s.x[i]));
        }
        const double n = static_cast<double>(s.n());
        unc.add(a.mass * mu_unc.value() / n);
        dsc.add(a.mass * mu_dsc.value() / n);
        mcb.add(a.mass * mu_mcb.value() / n);
    }
    CHECK(d.UNC == Approx(unc.value()).margin(1e-11 * std::max(1.0, d.UNC)));
    CHECK(d.DSC == Approx(dsc.value()).margin(1e-11 * std::max(1.0, d.UNC)));
    CHECK(d.MCB == Approx(mcb.value()).margin(1e-11 * std::max(1.0, d.UNC)));
}

TEST_CASE("pointwise murphy ordering transfers to every mixture score") {
    rng gen(61, 3);
    int tested = 0;
    while (tested < 10) {
        // construct an ordered pair: x2 is a mean-preserving contraction of
        // x1 toward the response's conditional mean structure
        const auto lvl = oracles::random_level_sample(gen, 800);
        if (!lvl.level_means_monotone) continue;
        const auto& s1 = lvl.sample;
        std::vector<double> x2(s1.n(), mean(s1.x));
        const auto s2 = make_paired(s1.y, x2);

        const auto grid = default_theta_grid(s1, 64);
        MurphyEvaluator m1(s1), m2(s2);
        bool ordered = true;
        for (double t : grid)
            if (m1(t) > m2(t) + 1e-12) ordered = false;
        if (!ordered) continue;
        ++tested;
        for (int rep = 0; rep < 100; ++rep) {
            const auto H = MixingMeasure::from_atoms(random_atoms(gen, 1.1 * grid.back()));
            CHECK(score(s1, H) <= score(s2, H) + 1e-9);
        }
    }
}
