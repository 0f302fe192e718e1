#pragma once

#include <limits>
#include <span>
#include <vector>

#include "lorext/errors.hpp"

namespace lorext {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Right-continuous piecewise-constant function on (0, infinity):
/// value levels[i] on [knots[i], knots[i+1]), zero on [knots.back(), inf).
/// knots.front() == 0 always. All step-function arithmetic used by the norms
/// (integration, products, powers against t^a dt) is exact closed form over
/// breakpoint partitions.
class StepFunction {
  public:
    StepFunction() : knots_{0.0} {}
    StepFunction(std::vector<double> knots, std::vector<double> levels);

    /// Nonincreasing canonical form (rearrangements). domain_end records w(X).
    static StepFunction nonincreasing(std::vector<double> breakpoints,
                                      std::vector<double> levels, double domain_end);

    double value(double t) const;
    bool is_zero() const { return levels_.empty(); }
    bool nonincreasing_levels() const;
    double domain_end() const { return domain_end_; }
    void set_domain_end(double t) { domain_end_ = t; }

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& levels() const { return levels_; }
    double max_level() const;

    /// integral_0^t of the function (piecewise linear in t, exact).
    double integral(double t) const;
    /// integral_0^infinity f(t) * t^(beta-1) dt, exact; requires beta > 0.
    double power_moment(double beta) const;
    /// sup_{t>0} t^(1/p) * f(t) over the whole half-line (attained at knots).
    double sup_power(double p) const;

    StepFunction pow(double e) const;
    static StepFunction product(const StepFunction& a, const StepFunction& b);

  private:
    std::vector<double> knots_;   // size m+1, knots_[0] == 0
    std::vector<double> levels_;  // size m
    double domain_end_ = 0.0;
};

/// Running average A(t) = (1/t) integral_0^t g, for a step function g.
/// For nonincreasing g this is again nonincreasing and >= g pointwise.
class RunningAverage {
  public:
    explicit RunningAverage(StepFunction g);
    double value(double t) const;        // (1/t) * integral
    double raw_integral(double t) const; // integral_0^t g (the unaveraged form)
    const StepFunction& base() const { return g_; }

    /// sup_{t>0} t^(1/p) * A(t); closed form per piece, requires p > 1.
    double sup_power(double p) const;
    /// ( (s/p) * integral_0^inf (t^{1/p} A(t))^s dt/t )^{1/s}; requires p > 1.
    double lorentz_integral(double p, double s) const;

  private:
    StepFunction g_;
    std::vector<double> prefix_;  // integral of g up to each knot
};

}  // namespace lorext
