#include "lorext/piecewise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace lorext {

StepFunction::StepFunction(std::vector<double> knots, std::vector<double> levels)
    : knots_(std::move(knots)), levels_(std::move(levels)) {
    if (knots_.empty() || knots_.front() != 0.0 || knots_.size() != levels_.size() + 1) {
        throw InputError("step function needs knots {0, t1, ..., tm} and m levels");
    }
    for (size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i] > knots_[i - 1])) throw InputError("knots must be strictly increasing");
    }
    domain_end_ = knots_.back();
}

StepFunction StepFunction::nonincreasing(std::vector<double> breakpoints,
                                         std::vector<double> levels, double domain_end) {
    std::vector<double> knots;
    knots.reserve(breakpoints.size() + 1);
    knots.push_back(0.0);
    knots.insert(knots.end(), breakpoints.begin(), breakpoints.end());
    StepFunction f(std::move(knots), std::move(levels));
    if (!f.nonincreasing_levels()) throw InputError("levels must be nonincreasing");
    f.domain_end_ = domain_end;
    return f;
}

bool StepFunction::nonincreasing_levels() const {
    for (size_t i = 1; i < levels_.size(); ++i) {
        if (levels_[i] > levels_[i - 1]) return false;
    }
    return levels_.empty() || levels_.back() >= 0.0;
}

double StepFunction::value(double t) const {
    if (t < 0.0 || levels_.empty() || t >= knots_.back()) return 0.0;
    // largest i with knots_[i] <= t
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    size_t idx = static_cast<size_t>(it - knots_.begin()) - 1;
    return levels_[idx];
}

double StepFunction::max_level() const {
    double m = 0.0;
    for (double v : levels_) m = std::max(m, v);
    return m;
}

double StepFunction::integral(double t) const {
    double acc = 0.0;
    for (size_t i = 0; i < levels_.size(); ++i) {
        const double a = knots_[i], b = knots_[i + 1];
        if (t <= a) break;
        acc += levels_[i] * (std::min(t, b) - a);
    }
    return acc;
}

double StepFunction::power_moment(double beta) const {
    if (!(beta > 0.0)) throw InvalidExponent("power_moment needs beta > 0");
    double acc = 0.0;
    for (size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i] == 0.0) continue;
        acc += levels_[i] * (std::pow(knots_[i + 1], beta) - std::pow(knots_[i], beta)) / beta;
    }
    return acc;
}

double StepFunction::sup_power(double p) const {
    // t^(1/p) v_i on [t_i, t_{i+1}) is increasing in t: sup at the right knot.
    double best = 0.0;
    for (size_t i = 0; i < levels_.size(); ++i) {
        best = std::max(best, std::pow(knots_[i + 1], 1.0 / p) * levels_[i]);
    }
    return best;
}

StepFunction StepFunction::pow(double e) const {
    StepFunction out = *this;
    for (double& v : out.levels_) v = std::pow(v, e);
    return out;
}

StepFunction StepFunction::product(const StepFunction& a, const StepFunction& b) {
    std::vector<double> knots = {0.0};
    std::vector<double> levels;
    const double end = std::min(a.knots_.back(), b.knots_.back());
    size_t ia = 0, ib = 0;
    double t = 0.0;
    while (t < end && ia < a.levels_.size() && ib < b.levels_.size()) {
        const double next = std::min(a.knots_[ia + 1], b.knots_[ib + 1]);
        levels.push_back(a.levels_[ia] * b.levels_[ib]);
        knots.push_back(next);
        if (a.knots_[ia + 1] == next) ++ia;
        if (b.knots_[ib + 1] == next) ++ib;
        t = next;
    }
    if (levels.empty()) return StepFunction();
    StepFunction out(std::move(knots), std::move(levels));
    out.domain_end_ = end;
    return out;
}

RunningAverage::RunningAverage(StepFunction g) : g_(std::move(g)) {
    prefix_.assign(g_.knots().size(), 0.0);
    for (size_t i = 0; i + 1 < g_.knots().size(); ++i) {
        prefix_[i + 1] = prefix_[i] + g_.levels()[i] * (g_.knots()[i + 1] - g_.knots()[i]);
    }
}

double RunningAverage::raw_integral(double t) const { return g_.integral(t); }

double RunningAverage::value(double t) const {
    if (!(t > 0.0)) throw InputError("running average needs t > 0");
    if (g_.is_zero()) return 0.0;
    if (t <= g_.knots()[1]) return g_.levels()[0];  // flat head: average == level
    return g_.integral(t) / t;
}

double RunningAverage::sup_power(double p) const {
    if (!(p > 1.0)) throw InvalidExponent("sup_power of an average needs p > 1");
    const auto& knots = g_.knots();
    const auto& levels = g_.levels();
    if (levels.empty()) return 0.0;
    double best = 0.0;
    const double inv_p = 1.0 / p;
    auto eval = [&](double t, size_t piece) {
        const double a = prefix_[piece] - levels[piece] * knots[piece];  // A(t) = (a + v t)/t
        return std::pow(t, inv_p - 1.0) * (a + levels[piece] * t);
    };
    for (size_t i = 0; i < levels.size(); ++i) {
        const double lo = (i == 0) ? 0.0 : knots[i];
        const double hi = knots[i + 1];
        if (i == 0) {
            // average == levels[0] on (0, t1]: t^{1/p} v increasing -> right end
            best = std::max(best, std::pow(hi, inv_p) * levels[0]);
            continue;
        }
        best = std::max(best, eval(lo, i));
        best = std::max(best, eval(hi, i));
        // interior critical point of t^{1/p-1}(a+vt): t* = a (p-1) / v
        const double a = prefix_[i] - levels[i] * knots[i];
        if (levels[i] > 0.0) {
            const double tstar = a * (p - 1.0) / levels[i];
            if (tstar > lo && tstar < hi) best = std::max(best, eval(tstar, i));
        }
    }
    // Tail beyond the last knot: A(t) = total/t, so t^{1/p-1} total decreasing.
    const double total = prefix_.back();
    if (total > 0.0) best = std::max(best, std::pow(knots.back(), inv_p - 1.0) * total);
    return best;
}

namespace {

// 32-point Gauss-Legendre on [-1, 1].
struct GaussRule {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
    GaussRule() {
        // Abscissae/weights (positive half), Golub-Welsch values.
        constexpr double xs[16] = {
            0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
            0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
            0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
            0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
            0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
            0.9972638618494815635};
        constexpr double ws[16] = {
            0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
            0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
            0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
            0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
            0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
            0.0070186100094700966};
        for (int i = 0; i < 16; ++i) {
            x[i] = xs[i];
            w[i] = ws[i];
        }
    }
};

template <typename F>
double gauss32(const F& f, double a, double b) {
    static const GaussRule rule;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        acc += rule.w[i] * (f(c + h * rule.x[i]) + f(c - h * rule.x[i]));
    }
    return acc * h;
}

// Integrate a smooth function over [a, b] with dyadic splitting so that each
// panel has bounded ratio b/a (keeps the power-law factors well resolved).
template <typename F>
double integrate_smooth(const F& f, double a, double b) {
    double acc = 0.0;
    double lo = a;
    while (lo < b) {
        double hi = std::min(b, lo * 2.0);
        if (hi <= lo) hi = b;
        acc += gauss32(f, lo, hi);
        lo = hi;
    }
    return acc;
}

}  // namespace

double RunningAverage::lorentz_integral(double p, double s) const {
    if (!(p > 1.0) || !(s >= 1.0)) throw InvalidExponent("lorentz_integral needs p > 1, s >= 1");
    const auto& knots = g_.knots();
    const auto& levels = g_.levels();
    if (levels.empty()) return 0.0;
    double acc = 0.0;
    // First piece: A(t) == levels[0], integrand (s/p) v^s t^{s/p - 1}: closed form.
    acc += std::pow(levels[0], s) * std::pow(knots[1], s / p);
    for (size_t i = 1; i < levels.size(); ++i) {
        const double a = prefix_[i] - levels[i] * knots[i];
        const double v = levels[i];
        auto integrand = [&](double t) {
            return std::pow(t, s / p - 1.0 - s) * std::pow(a + v * t, s);
        };
        acc += (s / p) * integrate_smooth(integrand, knots[i], knots[i + 1]);
    }
    // Tail: A(t) = total / t for t >= T; (s/p) total^s int_T^inf t^{s/p - 1 - s} dt.
    const double total = prefix_.back();
    if (total > 0.0) {
        const double expo = s / p - s;  // < 0 since p > 1
        acc += (s / p) * std::pow(total, s) * (-std::pow(knots.back(), expo) / expo);
    }
    return std::pow(acc, 1.0 / s);
}

}  // namespace lorext
