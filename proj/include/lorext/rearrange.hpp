#pragma once

#include <span>
#include <vector>

#include "lorext/piecewise.hpp"
#include "lorext/space.hpp"

namespace lorext {

/// Real-valued function given pointwise on a Space.
struct Sample {
    SpacePtr space;
    std::vector<double> values;

    Sample() = default;
    Sample(SpacePtr sp, std::vector<double> vals);
    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[i]; }
};

/// Strictly positive density against mu; w(E) = sum_E w mu.
struct Weight {
    SpacePtr space;
    std::vector<double> values;

    Weight() = default;
    Weight(SpacePtr sp, std::vector<double> vals);
    static Weight uniform(SpacePtr sp, double c = 1.0);
    /// Power weight w(x) = coordinate(x)^a on an interval grid.
    static Weight power(SpacePtr sp, double a);

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[i]; }
    double total() const;  // w(X)
    Weight pow(double e) const;
};

/// wE = sum_{x in E} w(x) mu({x}).
double weighted_measure(std::span<const int> members, const Weight& w);
double weighted_measure_all(const Weight& w);

/// tau -> w{ |f| > tau }, nonincreasing right-continuous step function of tau.
/// Returned as a StepFunction in the tau variable.
StepFunction distribution_function(const Sample& f, const Weight& w);
double distribution_at(const Sample& f, const Weight& w, double tau);

/// Weighted nonincreasing rearrangement of f with respect to w d(mu):
/// f*_w(t) = inf { tau : w{|f| > tau} <= t }, a step function on (0, w(X)).
StepFunction rearrangement(const Sample& f, const Weight& w);

/// f**_w as the running average (1/t) integral_0^t f*_w; the unaveraged
/// integral is available through RunningAverage::raw_integral.
RunningAverage double_star(const Sample& f, const Weight& w);

}  // namespace lorext
