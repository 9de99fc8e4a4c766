#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bregman {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data failed validation. `kind` distinguishes the failure modes.
struct validation_error : error {
    enum class code {
        empty_input,
        length_mismatch,
        negative_value,
        non_finite,
        out_of_range,
        bad_flag,
    };

    validation_error(code c, const std::string& what) : error(what), kind(c) {}
    code kind;
};

// Loss evaluation produced a non-finite value (generator undefined on the data).
struct loss_domain_error : error {
    using error::error;
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Neumaier compensated summation. Keeps long-sum identities tight enough
// for the 1e-10 relative checks used throughout.
struct stable_sum {
    double hi = 0.0;
    double lo = 0.0;

    void add(double v) {
        const double t = hi + v;
        if (std::abs(hi) >= std::abs(v)) {
            lo += (hi - t) + v;
        } else {
            lo += (v - t) + hi;
        }
        hi = t;
    }
    double value() const { return hi + lo; }
};

inline double sum(std::span<const double> v) {
    stable_sum s;
    for (double a : v) s.add(a);
    return s.value();
}

inline double mean(std::span<const double> v) {
    if (v.empty()) throw validation_error(validation_error::code::empty_input, "mean of empty range");
    return sum(v) / static_cast<double>(v.size());
}

// Population variance (divides by n).
inline double variance(std::span<const double> v) {
    const double m = mean(v);
    stable_sum s;
    for (double a : v) s.add((a - m) * (a - m));
    return s.value() / static_cast<double>(v.size());
}

inline double covariance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw validation_error(validation_error::code::length_mismatch, "covariance: length mismatch");
    if (a.empty()) throw validation_error(validation_error::code::empty_input, "covariance of empty range");
    const double ma = mean(a);
    const double mb = mean(b);
    stable_sum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add((a[i] - ma) * (b[i] - mb));
    return s.value() / static_cast<double>(a.size());
}

inline void require_finite_nonneg(std::span<const double> v, const char* name) {
    for (double a : v) {
        if (!std::isfinite(a))
            throw validation_error(validation_error::code::non_finite,
                                   std::string(name) + ": non-finite value");
        if (a < 0.0)
            throw validation_error(validation_error::code::negative_value,
                                   std::string(name) + ": negative value");
    }
}

inline std::vector<double> sorted_copy(std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bregman
