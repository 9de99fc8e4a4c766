#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bregman/common.hpp"

namespace bregman {

// Aligned response/predictor columns. Values must be finite and >= 0.
// `calibrated` marks the predictor as mean-calibrated (E[Y|X] = X); the
// flag is never set automatically.
struct PairedSample {
    std::vector<double> y;
    std::vector<double> x;
    bool calibrated = false;
    std::string label;

    std::size_t n() const { return y.size(); }
    double mean_y() const { return mean(y); }
    double mean_x() const { return mean(x); }

    // |mean(x) - mean(y)| / mean(y): global-unbiasedness diagnostic.
    double unbiasedness_gap() const {
        const double my = mean_y();
        if (my == 0.0) return inf;
        return std::abs(mean_x() - my) / my;
    }
};

inline PairedSample make_paired(std::vector<double> y, std::vector<double> x, std::string label = {}) {
    if (y.empty() || x.empty())
        throw validation_error(validation_error::code::empty_input, "make_paired: empty column");
    if (y.size() != x.size())
        throw validation_error(validation_error::code::length_mismatch,
                               "make_paired: response has " + std::to_string(y.size()) + " rows, predictor '" +
                                   label + "' has " + std::to_string(x.size()));
    require_finite_nonneg(y, "response");
    require_finite_nonneg(x, ("predictor " + label).c_str());
    PairedSample s;
    s.y = std::move(y);
    s.x = std::move(x);
    s.label = std::move(label);
    return s;
}

// One PairedSample per predictor column, all sharing the response.
inline std::vector<PairedSample> validate(const std::vector<double>& y,
                                          const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
    if (columns.empty())
        throw validation_error(validation_error::code::empty_input, "validate: no predictor columns");
    std::vector<PairedSample> out;
    out.reserve(columns.size());
    for (const auto& [name, col] : columns) out.push_back(make_paired(y, col, name));
    return out;
}

// ---------------------------------------------------------------------------
// Empirical distribution: right-continuous step CDF and its generalized
// inverse. quantile(0) returns the minimum (the 0+ convention).
// ---------------------------------------------------------------------------
struct EmpiricalDistribution {
    std::vector<double> sorted;

    double cdf(double t) const {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
        return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
    }

    // P(X < t): left limit of the CDF.
    double cdf_left(double t) const {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
        return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
    }

    // inf { t : F(t) >= p }
    double quantile(double p) const {
        if (!(p >= 0.0 && p <= 1.0))
            throw validation_error(validation_error::code::out_of_range, "quantile: p outside [0,1]");
        if (p == 0.0) return sorted.front();
        const std::size_t n = sorted.size();
        const std::size_t k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
        return sorted[std::min(k, n) - 1];
    }
};

inline EmpiricalDistribution ecdf(std::span<const double> values) {
    if (values.empty()) throw validation_error(validation_error::code::empty_input, "ecdf: empty input");
    return EmpiricalDistribution{sorted_copy(values)};
}

// Ascending order of x, ties kept in input order.
inline std::vector<std::size_t> sort_order(std::span<const double> x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    return idx;
}

// (rank - 0.5)/n with midranks on ties; values lie strictly inside (0,1)
// and average exactly 1/2.
inline std::vector<double> midrank_transform(std::span<const double> x) {
    if (x.empty()) throw validation_error(validation_error::code::empty_input, "midrank_transform: empty input");
    const std::size_t n = x.size();
    const auto idx = sort_order(x);
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        // midrank of the tie group spanning sorted positions [i, j] (1-based ranks)
        const double mid = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = (mid - 0.5) / static_cast<double>(n);
        i = j + 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Isotonic recalibration (pool-adjacent-violators): the non-decreasing
// least-squares fit of y on x. Exact ties of x are pooled first, so the
// fit is a function of x.
// ---------------------------------------------------------------------------
struct RecalibratedSample {
    struct Block {
        double x_lo;
        double x_hi;
        double value;
        std::size_t count;
    };
    std::vector<Block> blocks;
    std::vector<double> fitted;  // aligned with the original sample order
};

inline RecalibratedSample recalibrate(const PairedSample& s) {
    const std::size_t n = s.n();
    const auto idx = sort_order(s.x);

    struct Work {
        double sum;
        std::size_t count;
        double x_lo, x_hi;
    };
    std::vector<Work> stack;
    stack.reserve(n);

    std::size_t i = 0;
    while (i < n) {
        // pool exact x ties into one level
        std::size_t j = i;
        double ysum = s.y[idx[i]];
        while (j + 1 < n && s.x[idx[j + 1]] == s.x[idx[i]]) {
            ++j;
            ysum += s.y[idx[j]];
        }
        Work w{ysum, j - i + 1, s.x[idx[i]], s.x[idx[j]]};
        stack.push_back(w);
        while (stack.size() > 1) {
            auto& top = stack[stack.size() - 1];
            auto& prev = stack[stack.size() - 2];
            if (prev.sum * static_cast<double>(top.count) <= top.sum * static_cast<double>(prev.count)) break;
            prev.sum += top.sum;
            prev.count += top.count;
            prev.x_hi = top.x_hi;
            stack.pop_back();
        }
        i = j + 1;
    }

    RecalibratedSample out;
    out.fitted.resize(n);
    out.blocks.reserve(stack.size());
    std::size_t pos = 0;
    for (const auto& w : stack) {
        const double v = w.sum / static_cast<double>(w.count);
        out.blocks.push_back({w.x_lo, w.x_hi, v, w.count});
        for (std::size_t k = 0; k < w.count; ++k) out.fitted[idx[pos + k]] = v;
        pos += w.count;
    }
    return out;
}

// Equal-frequency binning alternative: k bins of near-equal counts, fitted
// value = bin mean of y. Tie groups of x are never split across bins.
inline RecalibratedSample recalibrate_binned(const PairedSample& s, std::size_t k) {
    if (k == 0) throw validation_error(validation_error::code::out_of_range, "recalibrate_binned: k must be >= 1");
    const std::size_t n = s.n();
    k = std::min(k, n);
    const auto idx = sort_order(s.x);

    RecalibratedSample out;
    out.fitted.resize(n);
    std::size_t start = 0;
    for (std::size_t b = 0; b < k && start < n; ++b) {
        std::size_t target = (n * (b + 1)) / k;
        if (target <= start) target = start + 1;
        // extend to the end of a tie group
        while (target < n && s.x[idx[target]] == s.x[idx[target - 1]]) ++target;
        stable_sum ysum;
        for (std::size_t t = start; t < target; ++t) ysum.add(s.y[idx[t]]);
        const double v = ysum.value() / static_cast<double>(target - start);
        out.blocks.push_back({s.x[idx[start]], s.x[idx[target - 1]], v, target - start});
        for (std::size_t t = start; t < target; ++t) out.fitted[idx[t]] = v;
        start = target;
    }
    return out;
}

}  // namespace bregman
