#include "lorext/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lorext {

Sample::Sample(SpacePtr sp, std::vector<double> vals) : space(std::move(sp)), values(std::move(vals)) {
    if (!space) throw InputError("sample needs a space");
    if (values.size() != static_cast<size_t>(space->size())) {
        throw InputError("sample length does not match point count");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw InputError("sample values must be finite");
    }
}

Weight::Weight(SpacePtr sp, std::vector<double> vals) : space(std::move(sp)), values(std::move(vals)) {
    if (!space) throw InputError("weight needs a space");
    if (values.size() != static_cast<size_t>(space->size())) {
        throw InputError("weight length does not match point count");
    }
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("weights must be positive and finite");
    }
}

Weight Weight::uniform(SpacePtr sp, double c) {
    std::vector<double> v(sp->size(), c);
    return Weight(std::move(sp), std::move(v));
}

Weight Weight::power(SpacePtr sp, double a) {
    if (!sp->is_interval_grid()) throw NotAGrid("power weights live on interval grids");
    std::vector<double> v(sp->size());
    for (int i = 0; i < sp->size(); ++i) v[i] = std::pow(sp->coordinate(i), a);
    return Weight(std::move(sp), std::move(v));
}

double Weight::total() const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i) acc += values[i] * space->mass(i);
    return acc;
}

Weight Weight::pow(double e) const {
    std::vector<double> v(values);
    for (double& x : v) x = std::pow(x, e);
    return Weight(space, std::move(v));
}

double weighted_measure(std::span<const int> members, const Weight& w) {
    double acc = 0.0;
    for (int i : members) acc += w.values[i] * w.space->mass(i);
    return acc;
}

double weighted_measure_all(const Weight& w) { return w.total(); }

namespace {

// Distinct |f| values in decreasing order with the cumulative w-measure of
// { |f| >= value }. Shared backbone of the distribution and rearrangement.
struct LayerCake {
    std::vector<double> values;   // v_1 > v_2 > ... > v_m (> 0 kept only)
    std::vector<double> cum;      // W_j = w{ |f| >= v_j }
};

LayerCake layer_cake(const Sample& f, const Weight& w) {
    if (f.space != w.space) throw InputError("sample and weight live on different spaces");
    const int n = f.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(f.values[a]) > std::abs(f.values[b]);
    });
    LayerCake lc;
    double cum = 0.0;
    for (int idx : order) {
        const double v = std::abs(f.values[idx]);
        if (v == 0.0) break;
        cum += w.values[idx] * w.space->mass(idx);
        if (!lc.values.empty() && lc.values.back() == v) {
            lc.cum.back() = cum;
        } else {
            lc.values.push_back(v);
            lc.cum.push_back(cum);
        }
    }
    return lc;
}

}  // namespace

StepFunction distribution_function(const Sample& f, const Weight& w) {
    const LayerCake lc = layer_cake(f, w);
    if (lc.values.empty()) return StepFunction();
    // lambda(tau) = W_j for tau in [v_{j+1}, v_j), zero for tau >= v_1.
    const size_t m = lc.values.size();
    std::vector<double> knots = {0.0};
    std::vector<double> levels;
    for (size_t j = 0; j < m; ++j) {
        const size_t rj = m - 1 - j;  // walk values increasing
        knots.push_back(lc.values[rj]);
        levels.push_back(lc.cum[rj]);
    }
    return StepFunction(std::move(knots), std::move(levels));
}

double distribution_at(const Sample& f, const Weight& w, double tau) {
    if (!(tau >= 0.0)) throw InputError("distribution needs tau >= 0");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        if (std::abs(f.values[i]) > tau) acc += w.values[i] * w.space->mass(i);
    }
    return acc;
}

StepFunction rearrangement(const Sample& f, const Weight& w) {
    const LayerCake lc = layer_cake(f, w);
    const double total = w.total();
    if (lc.values.empty()) {
        StepFunction zero;
        zero.set_domain_end(total);
        return zero;
    }
    // f*_w = v_j on [W_{j-1}, W_j); ties were merged so levels strictly drop.
    return StepFunction::nonincreasing(lc.cum, std::vector<double>(lc.values), total);
}

RunningAverage double_star(const Sample& f, const Weight& w) {
    return RunningAverage(rearrangement(f, w));
}

}  // namespace lorext
