#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "bregman/common.hpp"
#include "bregman/sample.hpp"

namespace bregman {

enum class Axis { probability, threshold };

// A function sampled on a strictly increasing grid, linear in between.
struct Curve {
    Axis axis = Axis::probability;
    std::vector<double> grid;
    std::vector<double> values;

    double eval(double t) const {
        if (grid.empty()) throw validation_error(validation_error::code::empty_input, "Curve::eval on empty curve");
        if (t <= grid.front()) return values.front();
        if (t >= grid.back()) return values.back();
        const auto it = std::upper_bound(grid.begin(), grid.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - grid.begin());
        const double w = (t - grid[k - 1]) / (grid[k] - grid[k - 1]);
        return values[k - 1] + w * (values[k] - values[k - 1]);
    }

    // Trapezoid integral over the grid; exact for the piecewise-linear curve.
    double integral() const {
        stable_sum s;
        for (std::size_t i = 1; i < grid.size(); ++i)
            s.add(0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]));
        return s.value();
    }
};

inline std::vector<double> uniform_grid(std::size_t m, double lo = 0.0, double hi = 1.0) {
    if (m < 2) throw validation_error(validation_error::code::out_of_range, "uniform_grid: need >= 2 points");
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    return g;
}

// ---------------------------------------------------------------------------
// Mean stop-loss E[(V - theta)+] of a column, evaluated from sorted suffix
// sums. Piecewise linear in theta with kinks at the sample values.
// ---------------------------------------------------------------------------
class StopLoss {
  public:
    explicit StopLoss(std::span<const double> values) : sorted_(sorted_copy(values)) {
        suffix_.assign(sorted_.size() + 1, 0.0);
        for (std::size_t i = sorted_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + sorted_[i];
    }

    double operator()(double theta) const {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), theta);
        const std::size_t k = static_cast<std::size_t>(it - sorted_.begin());
        const double cnt = static_cast<double>(sorted_.size() - k);
        return (suffix_[k] - theta * cnt) / static_cast<double>(sorted_.size());
    }

    double max_value() const { return sorted_.back(); }
    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
    std::vector<double> suffix_;
};

// ---------------------------------------------------------------------------
// Lorenz and concentration knots. Both curves are piecewise linear with
// vertices at p = k/n; within a tie group of x the response mass enters
// pooled, so intra-group order is irrelevant.
// ---------------------------------------------------------------------------
namespace detail {

// per-position (x sorted ascending, y pooled within x tie groups)
struct SortedColumns {
    std::vector<double> xs;        // sorted x
    std::vector<double> y_pooled;  // tie-group average of y, in x order
    double x_total = 0.0;
    double y_total = 0.0;
};

inline SortedColumns sorted_columns(const PairedSample& s) {
    const auto idx = sort_order(s.x);
    const std::size_t n = s.n();
    SortedColumns out;
    out.xs.resize(n);
    out.y_pooled.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.xs[i] = s.x[idx[i]];
    std::size_t i = 0;
    stable_sum xt, yt;
    while (i < n) {
        std::size_t j = i;
        stable_sum g;
        g.add(s.y[idx[i]]);
        while (j + 1 < n && out.xs[j + 1] == out.xs[i]) {
            ++j;
            g.add(s.y[idx[j]]);
        }
        const double avg = g.value() / static_cast<double>(j - i + 1);
        for (std::size_t k = i; k <= j; ++k) out.y_pooled[k] = avg;
        i = j + 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        xt.add(out.xs[k]);
        yt.add(out.y_pooled[k]);
    }
    out.x_total = xt.value();
    out.y_total = yt.value();
    return out;
}

// cumulative-share knots: value[k] = prefix_k / total, k = 0..n
inline std::vector<double> share_knots(std::span<const double> v, double total) {
    std::vector<double> knots(v.size() + 1, 0.0);
    stable_sum s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s.add(v[i]);
        knots[i + 1] = s.value() / total;
    }
    return knots;
}

inline Curve sample_knots(const std::vector<double>& knots, std::span<const double> grid) {
    const std::size_t n = knots.size() - 1;
    Curve c;
    c.axis = Axis::probability;
    c.grid.assign(grid.begin(), grid.end());
    c.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid[i];
        if (p <= 0.0) {
            c.values[i] = 0.0;
            continue;
        }
        if (p >= 1.0) {
            c.values[i] = knots[n];
            continue;
        }
        const double t = p * static_cast<double>(n);
        const std::size_t k = static_cast<std::size_t>(t);
        const double frac = t - static_cast<double>(k);
        c.values[i] = knots[k] + frac * (knots[k + 1] - knots[k]);
    }
    return c;
}

}  // namespace detail

// Exact Lorenz knots at p = k/n (prepend p=0). Returned as a Curve whose
// grid is {0, 1/n, ..., 1}.
inline Curve lorenz_knots(std::span<const double> x) {
    if (x.empty()) throw validation_error(validation_error::code::empty_input, "lorenz_knots: empty column");
    require_finite_nonneg(x, "lorenz");
    const auto xs = sorted_copy(x);
    const double total = sum(xs);
    if (total <= 0.0) throw validation_error(validation_error::code::out_of_range, "lorenz: zero total");
    Curve c;
    c.axis = Axis::probability;
    const std::size_t n = xs.size();
    c.grid.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c.grid[k] = static_cast<double>(k) / static_cast<double>(n);
    c.values = detail::share_knots(xs, total);
    return c;
}

inline Curve lorenz_curve(std::span<const double> x, std::span<const double> grid) {
    const Curve knots = lorenz_knots(x);
    return detail::sample_knots(knots.values, grid);
}

// Concentration knots: cumulative share of y over observations ranked by x.
inline Curve concentration_knots(const PairedSample& s) {
    const auto cols = detail::sorted_columns(s);
    if (cols.y_total <= 0.0)
        throw validation_error(validation_error::code::out_of_range, "concentration: zero total response");
    Curve c;
    c.axis = Axis::probability;
    const std::size_t n = cols.xs.size();
    c.grid.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c.grid[k] = static_cast<double>(k) / static_cast<double>(n);
    c.values = detail::share_knots(cols.y_pooled, cols.y_total);
    return c;
}

inline Curve concentration_curve(const PairedSample& s, std::span<const double> grid) {
    const Curve knots = concentration_knots(s);
    return detail::sample_knots(knots.values, grid);
}

// ---------------------------------------------------------------------------
// Murphy curves. M_theta = (1/n) sum L_theta(y_i, x_i), evaluated in
// O(log n) per theta from sorted prefix structures. When the sample is
// flagged mean-calibrated, the stop-loss form mean(y-t)+ - mean(x-t)+ is
// used instead (the cross term vanishes in expectation).
// ---------------------------------------------------------------------------
class MurphyEvaluator {
  public:
    explicit MurphyEvaluator(const PairedSample& s, bool calibrated_form = false)
        : sl_y_(s.y), sl_x_(s.x), calibrated_(calibrated_form || s.calibrated) {
        if (!calibrated_) {
            const auto idx = sort_order(s.x);
            const std::size_t n = s.n();
            xs_.resize(n);
            std::vector<double> diff(n);
            for (std::size_t i = 0; i < n; ++i) {
                xs_[i] = s.x[idx[i]];
                diff[i] = s.y[idx[i]] - s.x[idx[i]];
            }
            diff_suffix_.assign(n + 1, 0.0);
            for (std::size_t i = n; i-- > 0;) diff_suffix_[i] = diff_suffix_[i + 1] + diff[i];
        }
    }

    double operator()(double theta) const {
        double v = sl_y_(theta) - sl_x_(theta);
        if (!calibrated_) {
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), theta);
            const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
            v -= diff_suffix_[k] / static_cast<double>(xs_.size());
        }
        return v;
    }

    double theta_max() const { return std::max(sl_y_.max_value(), sl_x_.max_value()); }

  private:
    StopLoss sl_y_;
    StopLoss sl_x_;
    bool calibrated_;
    std::vector<double> xs_;
    std::vector<double> diff_suffix_;
};

// Distinct sample values of x and y, plus uniform fill up to 1.05 * max.
// Murphy curves are piecewise linear between these knots.
inline std::vector<double> default_theta_grid(const PairedSample& s, std::size_t fill = 512) {
    std::vector<double> g;
    g.reserve(2 * s.n() + fill);
    g.insert(g.end(), s.x.begin(), s.x.end());
    g.insert(g.end(), s.y.begin(), s.y.end());
    double mx = 0.0;
    for (double v : g) mx = std::max(mx, v);
    const auto fill_grid = uniform_grid(fill, 0.0, 1.05 * (mx > 0.0 ? mx : 1.0));
    g.insert(g.end(), fill_grid.begin(), fill_grid.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

inline Curve murphy_curve(const PairedSample& s, std::span<const double> theta_grid) {
    MurphyEvaluator m(s);
    Curve c;
    c.axis = Axis::threshold;
    c.grid.assign(theta_grid.begin(), theta_grid.end());
    c.values.resize(c.grid.size());
    for (std::size_t i = 0; i < c.grid.size(); ++i) c.values[i] = m(c.grid[i]);
    return c;
}

// M_theta(X, ybar) = mean (x - theta)+ - (ybar - theta)+; discriminatory
// content of the predictor alone.
inline Curve discrimination_murphy_curve(std::span<const double> x, double ybar,
                                         std::span<const double> theta_grid) {
    if (ybar <= 0.0)
        throw validation_error(validation_error::code::out_of_range, "discrimination_murphy_curve: ybar must be > 0");
    StopLoss sl(x);
    Curve c;
    c.axis = Axis::threshold;
    c.grid.assign(theta_grid.begin(), theta_grid.end());
    c.values.resize(c.grid.size());
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        const double t = c.grid[i];
        c.values[i] = sl(t) - (ybar > t ? ybar - t : 0.0);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Q function of the squared-area statistic:
//   Q(z) = (1/(n ybar)) sum (y_i - x_i)(1 - max(z, r_i)),  r_i midranks.
// Q(1) = 0 always; Q(0) = -ABC on a balanced sample.
// ---------------------------------------------------------------------------
class QFunction {
  public:
    explicit QFunction(const PairedSample& s) {
        if (mean(s.y) <= 0.0)
            throw validation_error(validation_error::code::out_of_range, "q_function: zero mean response");
        const auto r = midrank_transform(s.x);
        const std::size_t n = s.n();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
        rs_.resize(n);
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) {
            rs_[i] = r[idx[i]];
            d[i] = s.y[idx[i]] - s.x[idx[i]];
        }
        prefix_.assign(n + 1, 0.0);
        suffix_w_.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + d[i];
        for (std::size_t i = n; i-- > 0;) suffix_w_[i] = suffix_w_[i + 1] + d[i] * (1.0 - rs_[i]);
        scale_ = 1.0 / (static_cast<double>(n) * mean(s.y));
    }

    double operator()(double z) const {
        const auto it = std::upper_bound(rs_.begin(), rs_.end(), z);
        const std::size_t k = static_cast<std::size_t>(it - rs_.begin());
        return ((1.0 - z) * prefix_[k] + suffix_w_[k]) * scale_;
    }

  private:
    std::vector<double> rs_;
    std::vector<double> prefix_;
    std::vector<double> suffix_w_;
    double scale_ = 0.0;
};

inline Curve q_function(const PairedSample& s, std::span<const double> grid) {
    QFunction q(s);
    Curve c;
    c.axis = Axis::probability;
    c.grid.assign(grid.begin(), grid.end());
    c.values.resize(c.grid.size());
    for (std::size_t i = 0; i < c.grid.size(); ++i) c.values[i] = q(c.grid[i]);
    return c;
}

// ---------------------------------------------------------------------------
// Sign changes of the interpolated difference of two curves on a shared
// grid. Excursions that never exceed tol are suppressed and counted as
// unresolved instead.
// ---------------------------------------------------------------------------
struct CrossingReport {
    int sign_changes = 0;
    std::vector<double> locations;
    double tolerance = 0.0;
    int unresolved = 0;
};

inline CrossingReport sign_changes_of(std::span<const double> grid, std::span<const double> diff, double tol) {
    CrossingReport rep;
    rep.tolerance = tol;
    int last_sig = 0;          // sign of the last significant point
    double last_sig_t = 0.0;   // its abscissa
    double last_sig_v = 0.0;
    int last_raw = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        const double v = diff[i];
        const int raw = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        // raw flips landing inside the tolerance band are held as unresolved
        if (raw != 0 && last_raw != 0 && raw != last_raw && !(std::abs(v) > tol)) ++rep.unresolved;
        if (raw != 0) last_raw = raw;
        if (std::abs(v) <= tol) continue;
        const int sig = v > 0.0 ? 1 : -1;
        if (last_sig != 0 && sig != last_sig) {
            ++rep.sign_changes;
            if (rep.unresolved > 0) --rep.unresolved;  // the held flip materialized
            // linear inverse interpolation between the bracketing significant points
            const double t =
                last_sig_t + (grid[i] - last_sig_t) * (0.0 - last_sig_v) / (v - last_sig_v);
            rep.locations.push_back(t);
        }
        last_sig = sig;
        last_sig_t = grid[i];
        last_sig_v = v;
    }
    return rep;
}

inline CrossingReport sign_changes(const Curve& a, const Curve& b, double tol) {
    if (a.grid.size() != b.grid.size() || !std::equal(a.grid.begin(), a.grid.end(), b.grid.begin()))
        throw validation_error(validation_error::code::length_mismatch, "sign_changes: mismatched grids");
    std::vector<double> diff(a.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.values[i] - b.values[i];
    return sign_changes_of(a.grid, diff, tol);
}

}  // namespace bregman
