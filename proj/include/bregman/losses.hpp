#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bregman/common.hpp"
#include "bregman/sample.hpp"

namespace bregman {

// ---------------------------------------------------------------------------
// Convex generators. eval is phi, deriv is phi'. domain_floor > 0 means the
// loss is undefined for predictions at 0 (phi or phi' diverges there); eval
// still returns the signed infinite limit rather than trapping.
// ---------------------------------------------------------------------------
struct ConvexGenerator {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    double domain_floor = 0.0;
    std::string label;
};

struct TweedieSpec {
    double power = 0.0;
};

// Power-variance deviance generators: quadratic (p=0), Poisson (p=1),
// Gamma (p=2), and the general x^(2-p)/((1-p)(2-p)) branch elsewhere.
inline ConvexGenerator tweedie_generator(TweedieSpec spec) {
    const double p = spec.power;
    ConvexGenerator g;
    g.label = "tweedie:" + std::to_string(p);
    if (p == 0.0) {
        g.eval = [](double x) { return x * x; };
        g.deriv = [](double x) { return 2.0 * x; };
        g.domain_floor = 0.0;
    } else if (p == 1.0) {
        g.eval = [](double x) { return x > 0.0 ? x * std::log(x) - x : 0.0; };
        g.deriv = [](double x) { return x > 0.0 ? std::log(x) : -inf; };
        g.domain_floor = std::numeric_limits<double>::min();
    } else if (p == 2.0) {
        g.eval = [](double x) { return x > 0.0 ? -std::log(x) : inf; };
        g.deriv = [](double x) { return x > 0.0 ? -1.0 / x : -inf; };
        g.domain_floor = std::numeric_limits<double>::min();
    } else {
        const double c = (1.0 - p) * (2.0 - p);
        g.eval = [p, c](double x) {
            if (x > 0.0) return std::pow(x, 2.0 - p) / c;
            return p < 2.0 ? 0.0 : inf;  // limit at 0: finite for p<2, diverges beyond
        };
        g.deriv = [p](double x) {
            if (x > 0.0) return std::pow(x, 1.0 - p) / (1.0 - p);
            return p < 1.0 ? 0.0 : -inf;
        };
        g.domain_floor = p < 1.0 ? 0.0 : std::numeric_limits<double>::min();
    }
    return g;
}

// L_phi(y, x) = phi(y) - phi(x) - phi'(x) (y - x); 0 when y = x.
inline double bregman_loss(const ConvexGenerator& gen, double y, double x) {
    if (y < 0.0 || x < 0.0)
        throw validation_error(validation_error::code::negative_value, "bregman_loss: negative argument");
    if (y == x) return 0.0;
    const double py = gen.eval(y);
    const double px = gen.eval(x);
    const double dx = gen.deriv(x);
    const double v = py - px - dx * (y - x);
    if (!std::isfinite(v))
        throw loss_domain_error("bregman_loss[" + gen.label + "]: non-finite at y=" + std::to_string(y) +
                                ", x=" + std::to_string(x));
    return v;
}

// Elementary divergence L_theta(y,x) = (y-t)+ - (x-t)+ - 1{x>t}(y-x),
// evaluated in its branched form (exact, no cancellation):
//   x > t: (y-t)+ - (y-t), i.e. 0 if y > t else t - y
//   x <= t: (y-t)+
inline double elementary_loss(double theta, double y, double x) {
    if (x > theta) return y > theta ? 0.0 : theta - y;
    return y > theta ? y - theta : 0.0;
}

// ---------------------------------------------------------------------------
// Mixing measures H on [0, inf): atomic, or piecewise-linear in H (constant
// density per segment, optional linear tail). H(0) = 0 and H non-decreasing
// are enforced. An empirical CDF is the atomic measure with mass 1/n at
// each sample value.
// ---------------------------------------------------------------------------
class MixingMeasure {
  public:
    struct Atom {
        double theta;
        double mass;
    };
    struct Knot {
        double theta;
        double h;
    };
    enum class Kind { atoms, piecewise_linear };

    static MixingMeasure from_atoms(std::vector<Atom> atoms) {
        MixingMeasure m;
        m.kind_ = Kind::atoms;
        std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.theta < b.theta; });
        for (const auto& a : atoms) {
            if (a.theta < 0.0)
                throw validation_error(validation_error::code::negative_value, "MixingMeasure: atom theta < 0");
            if (!(a.mass > 0.0))
                throw validation_error(validation_error::code::out_of_range, "MixingMeasure: atom mass must be > 0");
            if (a.theta == 0.0) continue;  // L_0 vanishes identically; dropping keeps H(0) = 0
            if (!m.atoms_.empty() && m.atoms_.back().theta == a.theta) {
                m.atoms_.back().mass += a.mass;
            } else {
                m.atoms_.push_back(a);
            }
        }
        m.build_prefix();
        return m;
    }

    static MixingMeasure empirical_cdf(std::span<const double> values) {
        if (values.empty())
            throw validation_error(validation_error::code::empty_input, "MixingMeasure: empty column");
        const double w = 1.0 / static_cast<double>(values.size());
        std::vector<Atom> atoms;
        atoms.reserve(values.size());
        for (double v : values) atoms.push_back({v, w});
        return from_atoms(std::move(atoms));
    }

    // H interpolates the knots; the first knot must be (>=0, 0) and H grows
    // with slope tail_slope beyond the last knot.
    static MixingMeasure piecewise_linear(std::vector<Knot> knots, double tail_slope = 0.0) {
        if (knots.empty())
            throw validation_error(validation_error::code::empty_input, "MixingMeasure: no knots");
        if (knots.front().theta < 0.0 || knots.front().h != 0.0)
            throw validation_error(validation_error::code::out_of_range,
                                   "MixingMeasure: first knot must have h = 0 at theta >= 0");
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (!(knots[i].theta > knots[i - 1].theta))
                throw validation_error(validation_error::code::out_of_range,
                                       "MixingMeasure: knots must be strictly increasing");
            if (knots[i].h < knots[i - 1].h)
                throw validation_error(validation_error::code::out_of_range, "MixingMeasure: H must be non-decreasing");
        }
        if (tail_slope < 0.0)
            throw validation_error(validation_error::code::out_of_range, "MixingMeasure: tail slope must be >= 0");
        MixingMeasure m;
        m.kind_ = Kind::piecewise_linear;
        m.knots_ = std::move(knots);
        m.tail_slope_ = tail_slope;
        return m;
    }

    // H(theta) = slope * theta on [0, inf).
    static MixingMeasure linear(double slope) { return piecewise_linear({{0.0, 0.0}}, slope); }

    Kind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Knot>& knots() const { return knots_; }
    double tail_slope() const { return tail_slope_; }

    bool zero() const { return kind_ == Kind::atoms ? atoms_.empty() : (tail_slope_ == 0.0 && knots_.back().h == 0.0); }

    // H(t) (right-continuous).
    double value(double t) const {
        if (t < 0.0) return 0.0;
        if (kind_ == Kind::atoms) {
            const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                                             [](double v, const Atom& a) { return v < a.theta; });
            const std::size_t k = static_cast<std::size_t>(it - atoms_.begin());
            return mass_prefix_[k];
        }
        if (t <= knots_.front().theta) return 0.0;
        if (t >= knots_.back().theta) return knots_.back().h + tail_slope_ * (t - knots_.back().theta);
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                         [](double v, const Knot& k) { return v < k.theta; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (t - lo.theta) / (hi.theta - lo.theta);
        return lo.h + w * (hi.h - lo.h);
    }

    // H(t-): left limit, Sum of mass strictly below t for atomic measures.
    double value_left(double t) const {
        if (kind_ != Kind::atoms) return value(t);
        const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                                         [](const Atom& a, double v) { return a.theta < v; });
        return mass_prefix_[static_cast<std::size_t>(it - atoms_.begin())];
    }

    // Exact integral of the elementary-loss profile against dH; see
    // mixture_loss below for the profile.
    double integrate_elementary(double y, double x) const {
        if (y == x) return 0.0;
        if (kind_ == Kind::atoms) {
            if (y > x) {
                // atoms in [x, y): contribution m*(y - theta)
                const auto [m, mt] = window_sums(x, y, /*closed_lo=*/true);
                return y * m - mt;
            }
            // y < x: atoms in (y, x): contribution m*(theta - y)
            const auto [m, mt] = window_sums(y, x, /*closed_lo=*/false);
            return mt - y * m;
        }
        // piecewise-linear H: integrate |y - theta| * density over (lo, hi)
        const double lo = std::min(x, y);
        const double hi = std::max(x, y);
        double total = 0.0;
        auto add_segment = [&](double a, double b, double slope) {
            const double t0 = std::max(a, lo);
            const double t1 = std::min(b, hi);
            if (t1 <= t0 || slope == 0.0) return;
            const double q = 0.5 * (t1 * t1 - t0 * t0);
            total += slope * (y > x ? y * (t1 - t0) - q : q - y * (t1 - t0));
        };
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            const double slope = (knots_[i].h - knots_[i - 1].h) / (knots_[i].theta - knots_[i - 1].theta);
            add_segment(knots_[i - 1].theta, knots_[i].theta, slope);
        }
        add_segment(knots_.back().theta, hi, tail_slope_);
        return total;
    }

  private:
    void build_prefix() {
        mass_prefix_.assign(atoms_.size() + 1, 0.0);
        masstheta_prefix_.assign(atoms_.size() + 1, 0.0);
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            mass_prefix_[i + 1] = mass_prefix_[i] + atoms_[i].mass;
            masstheta_prefix_[i + 1] = masstheta_prefix_[i] + atoms_[i].mass * atoms_[i].theta;
        }
    }

    // (sum m, sum m*theta) over atoms with theta in [lo, hi) or (lo, hi)
    std::pair<double, double> window_sums(double lo, double hi, bool closed_lo) const {
        auto first = closed_lo ? std::lower_bound(atoms_.begin(), atoms_.end(), lo,
                                                  [](const Atom& a, double v) { return a.theta < v; })
                               : std::upper_bound(atoms_.begin(), atoms_.end(), lo,
                                                  [](double v, const Atom& a) { return v < a.theta; });
        auto last = std::lower_bound(atoms_.begin(), atoms_.end(), hi,
                                     [](const Atom& a, double v) { return a.theta < v; });
        const std::size_t i0 = static_cast<std::size_t>(first - atoms_.begin());
        const std::size_t i1 = static_cast<std::size_t>(last - atoms_.begin());
        if (i1 <= i0) return {0.0, 0.0};
        return {mass_prefix_[i1] - mass_prefix_[i0], masstheta_prefix_[i1] - masstheta_prefix_[i0]};
    }

    Kind kind_ = Kind::atoms;
    std::vector<Atom> atoms_;
    std::vector<double> mass_prefix_;
    std::vector<double> masstheta_prefix_;
    std::vector<Knot> knots_;
    double tail_slope_ = 0.0;
};

// L_H(y,x) = integral of L_theta(y,x) dH(theta). The elementary loss as a
// function of theta vanishes outside [min(x,y), max(x,y)] and equals
// |y - theta| inside, so the integral reduces to a window computation.
inline double mixture_loss(const MixingMeasure& H, double y, double x) {
    if (y < 0.0 || x < 0.0)
        throw validation_error(validation_error::code::negative_value, "mixture_loss: negative argument");
    return H.integrate_elementary(y, x);
}

// ---------------------------------------------------------------------------
// Empirical scores.
// ---------------------------------------------------------------------------

// (1/n) sum L(y_i, x_i) for an arbitrary loss evaluator.
template <class Loss>
    requires std::invocable<Loss&, double, double>
double score(const PairedSample& s, Loss&& loss) {
    if (s.n() == 0) throw validation_error(validation_error::code::empty_input, "score: empty sample");
    stable_sum acc;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double v = loss(s.y[i], s.x[i]);
        if (!std::isfinite(v)) throw loss_domain_error("score: non-finite loss term at row " + std::to_string(i));
        acc.add(v);
    }
    return acc.value() / static_cast<double>(s.n());
}

inline double score(const PairedSample& s, const ConvexGenerator& gen) {
    return score(s, [&](double y, double x) { return bregman_loss(gen, y, x); });
}

inline double score(const PairedSample& s, const MixingMeasure& H) {
    return score(s, [&](double y, double x) { return mixture_loss(H, y, x); });
}

// (1/n) sum L(y_i, x_i) W(F_X(x_i)) with midranks for F_X. Not a consistent
// score; kept as the demonstrator for predictor-dependent weighting.
template <class Weight>
double weighted_score(const PairedSample& s, const ConvexGenerator& gen, Weight&& weight) {
    if (s.n() == 0) throw validation_error(validation_error::code::empty_input, "weighted_score: empty sample");
    const auto r = midrank_transform(s.x);
    stable_sum acc;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double v = bregman_loss(gen, s.y[i], s.x[i]) * weight(r[i]);
        if (!std::isfinite(v))
            throw loss_domain_error("weighted_score: non-finite term at row " + std::to_string(i));
        acc.add(v);
    }
    return acc.value() / static_cast<double>(s.n());
}

inline double weighted_score(const PairedSample& s, const ConvexGenerator& gen) {
    return weighted_score(s, gen, [](double r) { return r; });
}

}  // namespace bregman
