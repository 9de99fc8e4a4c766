#pragma once

#include <cmath>
#include <string>

#include "bregman/common.hpp"
#include "bregman/losses.hpp"
#include "bregman/sample.hpp"

namespace bregman {

enum class Recalibration { pav, bins, none };

inline std::string recalibration_tag(Recalibration r, std::size_t bins_k = 0) {
    switch (r) {
        case Recalibration::pav: return "pav";
        case Recalibration::bins: return "bins:" + std::to_string(bins_k);
        case Recalibration::none: return "none";
    }
    return "?";
}

inline std::vector<double> fitted_conditional_mean(const PairedSample& s, Recalibration method,
                                                   std::size_t bins_k = 0) {
    switch (method) {
        case Recalibration::pav: return recalibrate(s).fitted;
        case Recalibration::bins: return recalibrate_binned(s, bins_k).fitted;
        case Recalibration::none: return s.x;
    }
    throw validation_error(validation_error::code::out_of_range, "unknown recalibration");
}

// S = UNC - DSC + MCB with the predictor-only forms
//   DSC = mean L(yhat_i, ybar),  MCB = mean L(yhat_i, x_i),
// yhat the recalibrated predictor. identity_residual() reports how far
// these components are from closing the identity on this sample; it
// vanishes whenever the recalibration carries exact per-x-level means of y.
struct DecompositionResult {
    double S = 0.0;
    double UNC = 0.0;
    double DSC = 0.0;
    double MCB = 0.0;
    std::string generator_label;
    std::string recalibration;

    double s_alt() const { return UNC - DSC + MCB; }
    double identity_residual() const { return std::abs(S - s_alt()); }
};

namespace detail {

template <class Loss>
DecompositionResult decompose_with(const PairedSample& s, Loss&& loss, const std::vector<double>& fitted,
                                   const std::string& label, const std::string& recal) {
    const double ybar = s.mean_y();
    stable_sum S, UNC, DSC, MCB;
    for (std::size_t i = 0; i < s.n(); ++i) {
        S.add(loss(s.y[i], s.x[i]));
        UNC.add(loss(s.y[i], ybar));
        DSC.add(loss(fitted[i], ybar));
        MCB.add(loss(fitted[i], s.x[i]));
    }
    const double n = static_cast<double>(s.n());
    DecompositionResult r;
    r.S = S.value() / n;
    r.UNC = UNC.value() / n;
    r.DSC = DSC.value() / n;
    r.MCB = MCB.value() / n;
    r.generator_label = label;
    r.recalibration = recal;
    if (!std::isfinite(r.S) || !std::isfinite(r.UNC) || !std::isfinite(r.DSC) || !std::isfinite(r.MCB))
        throw loss_domain_error("murphy_decomposition[" + label + "]: generator non-finite on sample support");
    return r;
}

}  // namespace detail

inline DecompositionResult murphy_decomposition(const PairedSample& s, const ConvexGenerator& gen,
                                                Recalibration method = Recalibration::pav,
                                                std::size_t bins_k = 0) {
    const auto fitted = fitted_conditional_mean(s, method, bins_k);
    return detail::decompose_with(
        s, [&](double y, double x) { return bregman_loss(gen, y, x); }, fitted, gen.label,
        recalibration_tag(method, bins_k));
}

inline DecompositionResult murphy_decomposition(const PairedSample& s, const MixingMeasure& H,
                                                Recalibration method = Recalibration::pav,
                                                std::size_t bins_k = 0) {
    const auto fitted = fitted_conditional_mean(s, method, bins_k);
    return detail::decompose_with(
        s, [&](double y, double x) { return mixture_loss(H, y, x); }, fitted, "mixture",
        recalibration_tag(method, bins_k));
}

// Classic difference forms, the cross-check against the predictor-only
// components; the two agree when the recalibrated values are per-x-level
// conditional means.
struct DecompositionCrossCheck {
    double dsc_classic = 0.0;  // S(Y, ybar) - S(Y, Yhat)
    double mcb_classic = 0.0;  // S(Y, X)    - S(Y, Yhat)
};

template <class Loss>
DecompositionCrossCheck decomposition_cross_check(const PairedSample& s, Loss&& loss,
                                                  const std::vector<double>& fitted) {
    const double ybar = s.mean_y();
    stable_sum S, UNC, SF;
    for (std::size_t i = 0; i < s.n(); ++i) {
        S.add(loss(s.y[i], s.x[i]));
        UNC.add(loss(s.y[i], ybar));
        SF.add(loss(s.y[i], fitted[i]));
    }
    const double n = static_cast<double>(s.n());
    return {(UNC.value() - SF.value()) / n, (S.value() - SF.value()) / n};
}

// Squared-loss specializations: MCB = mean (yhat - x)^2, DSC = Var(yhat).
inline double mcb_mse(const PairedSample& s, Recalibration method = Recalibration::pav, std::size_t bins_k = 0) {
    const auto fitted = fitted_conditional_mean(s, method, bins_k);
    stable_sum acc;
    for (std::size_t i = 0; i < s.n(); ++i) acc.add((fitted[i] - s.x[i]) * (fitted[i] - s.x[i]));
    return acc.value() / static_cast<double>(s.n());
}

inline double dsc_mse(const PairedSample& s, Recalibration method = Recalibration::pav, std::size_t bins_k = 0) {
    return variance(fitted_conditional_mean(s, method, bins_k));
}

// UNC - S = DSC - MCB: improvement over the climatological mean predictor.
inline double skill_score(const PairedSample& s, const ConvexGenerator& gen,
                          Recalibration method = Recalibration::pav, std::size_t bins_k = 0) {
    const auto d = murphy_decomposition(s, gen, method, bins_k);
    return d.UNC - d.S;
}

// ---------------------------------------------------------------------------
// MCB of a mixture loss and its exact empirical split. For any pair (w, x)
//   integral L_theta(w,x) dH = int_0^w H - int_0^x H + (x - w) H(x-),
// so averaging over the sample,
//   MCB_{L_H} = E[(X - Yhat) H(X-)] + integral (F_X - F_Yhat)(t) H(t) dt.
// The left limit H(X-) matters when H places atoms on data points.
// ---------------------------------------------------------------------------

// integral of H(theta) dtheta over [a, b], exact for both measure kinds.
inline double integrate_H(const MixingMeasure& H, double a, double b) {
    if (b <= a) return 0.0;
    if (H.kind() == MixingMeasure::Kind::atoms) {
        const auto& atoms = H.atoms();
        double total = 0.0;
        double t = a;
        double level = H.value(a);
        auto it = std::upper_bound(atoms.begin(), atoms.end(), a,
                                   [](double v, const MixingMeasure::Atom& at) { return v < at.theta; });
        for (; it != atoms.end() && it->theta < b; ++it) {
            total += level * (it->theta - t);
            t = it->theta;
            level += it->mass;
        }
        total += level * (b - t);
        return total;
    }
    // piecewise linear: split at the H-knots, trapezoid per segment
    stable_sum total;
    double t = a;
    double ht = H.value(a);
    for (const auto& k : H.knots()) {
        if (k.theta <= a) continue;
        if (k.theta >= b) break;
        total.add(0.5 * (ht + k.h) * (k.theta - t));
        t = k.theta;
        ht = k.h;
    }
    const double hb = H.value(b);
    total.add(0.5 * (ht + hb) * (b - t));
    return total.value();
}

struct MixtureMcb {
    double mcb = 0.0;
    double cov_term = 0.0;       // E[(X - Yhat) H(X-)]
    double integral_term = 0.0;  // integral (F_X - F_Yhat) H dtheta
};

inline MixtureMcb mcb_via_mixture(const PairedSample& s, const MixingMeasure& H,
                                  Recalibration method = Recalibration::pav, std::size_t bins_k = 0) {
    const auto fitted = fitted_conditional_mean(s, method, bins_k);
    const std::size_t n = s.n();

    MixtureMcb out;
    stable_sum mcb, cov;
    for (std::size_t i = 0; i < n; ++i) {
        mcb.add(mixture_loss(H, fitted[i], s.x[i]));
        cov.add((s.x[i] - fitted[i]) * H.value_left(s.x[i]));
    }
    out.mcb = mcb.value() / static_cast<double>(n);
    out.cov_term = cov.value() / static_cast<double>(n);

    const auto fx = ecdf(s.x);
    const auto ff = ecdf(fitted);
    std::vector<double> knots;
    knots.reserve(2 * n);
    knots.insert(knots.end(), fx.sorted.begin(), fx.sorted.end());
    knots.insert(knots.end(), ff.sorted.begin(), ff.sorted.end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    stable_sum integ;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double d = fx.cdf(knots[k]) - ff.cdf(knots[k]);  // constant on [knots[k], knots[k+1])
        if (d != 0.0) integ.add(d * integrate_H(H, knots[k], knots[k + 1]));
    }
    out.integral_term = integ.value();
    return out;
}

}  // namespace bregman
