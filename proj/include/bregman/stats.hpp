#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "bregman/common.hpp"
#include "bregman/curves.hpp"
#include "bregman/decomp.hpp"
#include "bregman/losses.hpp"
#include "bregman/sample.hpp"

namespace bregman {

// ---------------------------------------------------------------------------
// ABC and ABC^2. Sign convention: abc = Cov(Y - X, F_X(X)) / mean(Y), which
// equals the knot-exact integral of (LC - CC) on the empirical measure.
// (The two printed orientations in the source material disagree; this is the
// one consistent with the Q-function identities Q(0) = -ABC, Q' = LC - CC
// and with all reported values.)
// ---------------------------------------------------------------------------
struct AbcReport {
    double abc = 0.0;              // canonical: covariance form
    double abc_from_curves = 0.0;  // integral (LC - CC) dp on knots
    double abc_from_cov = 0.0;     // Cov(y - x, midranks) / ybar
    double abc2 = 0.0;             // canonical: curve form
    double abc2_from_curves = 0.0;
    double abc2_from_q = 0.0;  // Cov(y - x, Q(midranks)) / ybar
    double unbiasedness_gap = 0.0;
};

namespace detail {

// Lorenz/concentration knot gap D_k = LC - CC at p = k/n, k = 0..n.
inline std::vector<double> lorenz_cc_gap(const PairedSample& s) {
    const auto cols = sorted_columns(s);
    if (cols.x_total <= 0.0 || cols.y_total <= 0.0)
        throw validation_error(validation_error::code::out_of_range, "abc: zero column total");
    const std::size_t n = cols.xs.size();
    std::vector<double> d(n + 1, 0.0);
    stable_sum px, py;
    for (std::size_t i = 0; i < n; ++i) {
        px.add(cols.xs[i]);
        py.add(cols.y_pooled[i]);
        d[i + 1] = px.value() / cols.x_total - py.value() / cols.y_total;
    }
    return d;
}

}  // namespace detail

inline AbcReport abc(const PairedSample& s) {
    AbcReport r;
    r.unbiasedness_gap = s.unbiasedness_gap();
    const double ybar = s.mean_y();
    if (ybar <= 0.0) throw validation_error(validation_error::code::out_of_range, "abc: zero mean response");

    const auto ranks = midrank_transform(s.x);
    {
        // Cov(y - x, r); midranks average exactly 1/2
        stable_sum acc;
        const double md = s.mean_y() - s.mean_x();
        for (std::size_t i = 0; i < s.n(); ++i)
            acc.add((s.y[i] - s.x[i] - md) * (ranks[i] - 0.5));
        r.abc_from_cov = acc.value() / static_cast<double>(s.n()) / ybar;
    }

    const auto d = detail::lorenz_cc_gap(s);
    stable_sum integ;
    const double w = 1.0 / static_cast<double>(d.size() - 1);
    for (std::size_t k = 0; k + 1 < d.size(); ++k) integ.add(0.5 * (d[k] + d[k + 1]) * w);
    r.abc_from_curves = integ.value();

    r.abc = r.abc_from_cov;
    return r;
}

inline AbcReport abc_squared(const PairedSample& s) {
    AbcReport r;
    r.unbiasedness_gap = s.unbiasedness_gap();
    const double ybar = s.mean_y();
    if (ybar <= 0.0) throw validation_error(validation_error::code::out_of_range, "abc_squared: zero mean response");

    const auto d = detail::lorenz_cc_gap(s);
    stable_sum integ;
    const double w = 1.0 / static_cast<double>(d.size() - 1);
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        integ.add(w * (d[k] * d[k] + d[k] * d[k + 1] + d[k + 1] * d[k + 1]) / 3.0);
    r.abc2_from_curves = integ.value();

    QFunction q(s);
    const auto ranks = midrank_transform(s.x);
    std::vector<double> qr(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) qr[i] = q(ranks[i]);
    std::vector<double> diff(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) diff[i] = s.y[i] - s.x[i];
    r.abc2_from_q = covariance(diff, qr) / ybar;

    r.abc2 = r.abc2_from_curves;
    return r;
}

// ---------------------------------------------------------------------------
// Gini index through three algebraically equal routes on the empirical
// measure (midrank covariance, sorted pairwise MAD, CDF integral).
// ---------------------------------------------------------------------------
struct GiniReport {
    double gini_cov = 0.0;
    double gini_mad = 0.0;
    double gini_integral = 0.0;
    double value = 0.0;
    double max_discrepancy = 0.0;
};

inline GiniReport gini(std::span<const double> x) {
    if (x.empty()) throw validation_error(validation_error::code::empty_input, "gini: empty column");
    require_finite_nonneg(x, "gini");
    const double xbar = mean(x);
    if (xbar <= 0.0) throw validation_error(validation_error::code::out_of_range, "gini: zero mean");
    const double n = static_cast<double>(x.size());

    GiniReport r;
    {
        const auto ranks = midrank_transform(x);
        stable_sum acc;
        for (std::size_t i = 0; i < x.size(); ++i) acc.add((x[i] - xbar) * (ranks[i] - 0.5));
        r.gini_cov = 2.0 * acc.value() / n / xbar;
    }
    const auto xs = sorted_copy(x);
    {
        // sum over ordered pairs i<j of gaps, via running prefix sums
        stable_sum acc;
        stable_sum prefix;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            acc.add(static_cast<double>(k) * xs[k] - prefix.value());
            prefix.add(xs[k]);
        }
        // E|X - X'| over all n^2 ordered pairs (i = j included)
        const double mad = 2.0 * acc.value() / (n * n);
        r.gini_mad = mad / (2.0 * xbar);
    }
    {
        stable_sum acc;
        std::size_t i = 0;
        while (i < xs.size()) {
            std::size_t j = i;
            while (j + 1 < xs.size() && xs[j + 1] == xs[i]) ++j;
            if (j + 1 < xs.size()) {
                const double F = static_cast<double>(j + 1) / n;
                acc.add((xs[j + 1] - xs[i]) * F * (1.0 - F));
            }
            i = j + 1;
        }
        r.gini_integral = acc.value() / xbar;
    }
    r.value = r.gini_cov;
    r.max_discrepancy = std::max({std::abs(r.gini_cov - r.gini_mad), std::abs(r.gini_cov - r.gini_integral),
                                  std::abs(r.gini_mad - r.gini_integral)});
    return r;
}

// ---------------------------------------------------------------------------
// Gini = DSC_{L_H}/ybar + MAD/(2 ybar) with H the empirical CDF of x, for
// mean-calibrated predictors. The third route expresses the MAD term off
// the Lorenz curve at the rank of the mean.
// ---------------------------------------------------------------------------
struct GiniDscReport {
    double gini = 0.0;
    double dsc_term = 0.0;         // DSC_{L_H}(Y, X) / ybar, H = ecdf(x)
    double mad_term = 0.0;         // E|X - ybar| / (2 ybar)
    double mad_from_lorenz = 0.0;  // F_X(ybar) - LC at p = F_X(ybar)
    double residual = 0.0;
};

inline GiniDscReport gini_dsc_decomposition(const PairedSample& s) {
    if (!s.calibrated)
        throw validation_error(validation_error::code::bad_flag,
                               "gini_dsc_decomposition: sample must be flagged mean-calibrated");
    const double ybar = s.mean_y();
    GiniDscReport r;
    r.gini = gini(s.x).value;

    const auto H = MixingMeasure::empirical_cdf(s.x);
    stable_sum dsc;
    for (std::size_t i = 0; i < s.n(); ++i) dsc.add(mixture_loss(H, s.x[i], ybar));
    r.dsc_term = dsc.value() / static_cast<double>(s.n()) / ybar;

    stable_sum mad;
    for (double v : s.x) mad.add(std::abs(v - ybar));
    r.mad_term = 0.5 * mad.value() / static_cast<double>(s.n()) / ybar;

    const auto lc = lorenz_knots(s.x);
    const auto fx = ecdf(s.x);
    const double p = fx.cdf(ybar);
    r.mad_from_lorenz = p - lc.eval(p);

    r.residual = r.gini - r.dsc_term - r.mad_term;
    return r;
}

// ---------------------------------------------------------------------------
// Binary AUC with midrank tie correction, and the residual of the
// calibrated-score identity Gini(X) = pi0 (2 AUC(X) - 1). The pi0 factor
// follows from 2 AUC - 1 = E|X - X'| / (2 pi0 pi1) for calibrated scores;
// the perfectly separating limit (Gini -> pi0, AUC -> 1) pins it down.
// ---------------------------------------------------------------------------
struct AucReport {
    double auc = 0.0;
    double pi0 = 0.0;
    double pi1 = 0.0;
    double gini_relation_residual = 0.0;
};

inline AucReport auc_binary(const PairedSample& s) {
    std::size_t n1 = 0;
    for (double v : s.y) {
        if (v != 0.0 && v != 1.0)
            throw validation_error(validation_error::code::out_of_range, "auc_binary: response must be 0/1");
        if (v == 1.0) ++n1;
    }
    const std::size_t n0 = s.n() - n1;
    if (n0 == 0 || n1 == 0)
        throw validation_error(validation_error::code::out_of_range, "auc_binary: single-class response");

    const auto ranks = midrank_transform(s.x);
    stable_sum pos_ranks;
    for (std::size_t i = 0; i < s.n(); ++i)
        if (s.y[i] == 1.0) pos_ranks.add(ranks[i] * static_cast<double>(s.n()) + 0.5);
    const double u = pos_ranks.value() - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    AucReport r;
    r.auc = u / (static_cast<double>(n1) * static_cast<double>(n0));
    r.pi1 = static_cast<double>(n1) / static_cast<double>(s.n());
    r.pi0 = 1.0 - r.pi1;
    r.gini_relation_residual = gini(s.x).value - r.pi0 * (2.0 * r.auc - 1.0);
    return r;
}

// S_{L_H}(Y, X) with H = ecdf(x): the mixture score used by the AUC and
// Gini representations (O(n log n) through the atom window sums).
inline double score_ecdf_mixture(const PairedSample& s) {
    const auto H = MixingMeasure::empirical_cdf(s.x);
    return score(s, H);
}

// ---------------------------------------------------------------------------
// Closed forms under linear miscalibration E[Y|X] = (1-b) E[Y] + b X, with
// lorenz/var/gini describing X itself:
//   CC_p  = (1-b) p + b LC_p
//   ABC   = -(1-b)/2 Gini(X)         (canonical orientation, see AbcReport)
//   ABC^2 = (1-b)^2 integral (p - LC_p)^2 dp
//   MCB   = (1-b)^2 Var(X)
// ---------------------------------------------------------------------------
struct LinearMiscalReport {
    Curve cc;
    double abc = 0.0;
    double abc2 = 0.0;
    double mcb_mse = 0.0;
};

inline LinearMiscalReport linear_miscalibration_oracle(double b, const Curve& lorenz, double var_x,
                                                       double gini_x) {
    LinearMiscalReport r;
    r.cc = lorenz;
    for (std::size_t i = 0; i < r.cc.grid.size(); ++i)
        r.cc.values[i] = (1.0 - b) * r.cc.grid[i] + b * lorenz.values[i];
    r.abc = -(1.0 - b) * 0.5 * gini_x;
    stable_sum integ;
    for (std::size_t i = 0; i + 1 < lorenz.grid.size(); ++i) {
        const double g0 = lorenz.grid[i] - lorenz.values[i];
        const double g1 = lorenz.grid[i + 1] - lorenz.values[i + 1];
        integ.add((lorenz.grid[i + 1] - lorenz.grid[i]) * (g0 * g0 + g0 * g1 + g1 * g1) / 3.0);
    }
    r.abc2 = (1.0 - b) * (1.0 - b) * integ.value();
    r.mcb_mse = (1.0 - b) * (1.0 - b) * var_x;
    return r;
}

// ---------------------------------------------------------------------------
// Reconstruction of ABC and ABC^2 from mixture-MCB quantities:
//   (i)  H = ecdf(x):      ABC   = -(MCB_H + integral (F_Yhat - F_X) H)/ybar
//   (ii) Q increasing,  H = Q(F_X) + ABC:    ABC^2 = -(...)/ybar
//   (iii) Q decreasing, H = -(Q(F_X) + ABC): ABC^2 = +(...)/ybar
//   split: H = H1 - H2 (Jordan pieces of Q(F_X) + ABC), MCB_H := MCB_H1 - MCB_H2.
// ---------------------------------------------------------------------------
enum class QDirection { auto_detect, increasing, decreasing, split };

struct AbcViaMcbReport {
    QDirection used = QDirection::auto_detect;
    bool q_increasing = false;
    bool q_decreasing = false;
    double abc_reconstructed = 0.0;
    double abc_residual = 0.0;
    double abc2_reconstructed = 0.0;
    double abc2_residual = 0.0;
};

inline AbcViaMcbReport abc_via_mcb(const PairedSample& s, QDirection direction = QDirection::auto_detect) {
    const double ybar = s.mean_y();
    const auto abc_rep = abc(s);
    const auto abc2_rep = abc_squared(s);

    AbcViaMcbReport out;

    // part (i): H = ecdf(x)
    {
        const auto H = MixingMeasure::empirical_cdf(s.x);
        const auto m = mcb_via_mixture(s, H);
        out.abc_reconstructed = -(m.mcb - m.integral_term) / ybar;  // integral (F_Yhat - F_X) H = -integral_term
        out.abc_residual = out.abc_reconstructed - abc_rep.abc;
    }

    // H_raw(theta) = Q(F_X(theta)) + ABC evaluated on the distinct x knots
    const auto xs = sorted_copy(s.x);
    QFunction q(s);
    std::vector<double> knots_v;
    std::vector<double> knots_h;
    const double n = static_cast<double>(xs.size());
    std::size_t i = 0;
    std::size_t count = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j + 1 < xs.size() && xs[j + 1] == xs[i]) ++j;
        count += j - i + 1;
        knots_v.push_back(xs[i]);
        knots_h.push_back(q(static_cast<double>(count) / n) + abc_rep.abc);
        i = j + 1;
    }

    double scale = 0.0;
    for (double h : knots_h) scale = std::max(scale, std::abs(h));
    const double tol = 1e-9 * std::max(scale, 1e-300);
    bool inc = true, dec = true;
    for (std::size_t k = 1; k < knots_h.size(); ++k) {
        const double dlt = knots_h[k] - knots_h[k - 1];
        if (dlt < -tol) inc = false;
        if (dlt > tol) dec = false;
    }
    out.q_increasing = inc;
    out.q_decreasing = dec;

    QDirection dir = direction;
    if (dir == QDirection::auto_detect) dir = inc ? QDirection::increasing
                                              : dec ? QDirection::decreasing
                                                    : QDirection::split;
    out.used = dir;

    auto atoms_from = [&](int sign, bool positive_part) {
        std::vector<MixingMeasure::Atom> atoms;
        double prev = 0.0;  // H anchored at H(0) = 0
        for (std::size_t k = 0; k < knots_v.size(); ++k) {
            const double h = sign * knots_h[k];
            double dlt = h - prev;
            prev = h;
            if (positive_part ? dlt > 0.0 : dlt < 0.0) atoms.push_back({knots_v[k], std::abs(dlt)});
        }
        return atoms;
    };

    auto reconstruct = [&](const MixingMeasure& H, double sgn) {
        const auto m = mcb_via_mixture(s, H);
        return sgn * (m.mcb - m.integral_term) / ybar;
    };

    switch (dir) {
        case QDirection::increasing: {
            auto atoms = atoms_from(+1, true);
            if (atoms.empty()) {
                out.abc2_reconstructed = 0.0;
            } else {
                out.abc2_reconstructed = reconstruct(MixingMeasure::from_atoms(std::move(atoms)), -1.0);
            }
            break;
        }
        case QDirection::decreasing: {
            auto atoms = atoms_from(-1, true);
            if (atoms.empty()) {
                out.abc2_reconstructed = 0.0;
            } else {
                out.abc2_reconstructed = reconstruct(MixingMeasure::from_atoms(std::move(atoms)), +1.0);
            }
            break;
        }
        case QDirection::split:
        case QDirection::auto_detect: {
            auto up = atoms_from(+1, true);    // increasing piece H1
            auto down = atoms_from(+1, false);  // decreasing piece H2 (as positive masses)
            double mcb_diff = 0.0;
            double integral_diff = 0.0;
            if (!up.empty()) {
                const auto m1 = mcb_via_mixture(s, MixingMeasure::from_atoms(std::move(up)));
                mcb_diff += m1.mcb;
                integral_diff += m1.integral_term;
            }
            if (!down.empty()) {
                const auto m2 = mcb_via_mixture(s, MixingMeasure::from_atoms(std::move(down)));
                mcb_diff -= m2.mcb;
                integral_diff -= m2.integral_term;
            }
            out.abc2_reconstructed = -(mcb_diff - integral_diff) / ybar;
            break;
        }
    }
    out.abc2_residual = out.abc2_reconstructed - abc2_rep.abc2;
    return out;
}

}  // namespace bregman
