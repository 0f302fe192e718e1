#pragma once

#include <functional>
#include <string>

#include "lorext/rearrange.hpp"

namespace lorext {

/// Hardy-Littlewood maximal function: exact pointwise sup of ball averages.
Sample maximal(const Sample& f);
/// M^m with M^0 f = |f|.
Sample iterated_maximal(const Sample& f, int m);

/// M_alpha f(x) = sup_{B in x} mu(B)^{alpha-1} int_B |f| dmu, 0 < alpha < 1.
Sample fractional_maximal(const Sample& f, double alpha);

/// I_alpha f(x) = sum_y K_alpha(x,y) f(y) mu({y}) with
/// K_alpha(x,y) = mu(B(x, d(x,y)))^{alpha-1} off the diagonal. The diagonal
/// atom uses mu({x})^{alpha-1}; `printed_diagonal` switches to the plain
/// mu({x}) convention.
Sample fractional_integral(const Sample& f, double alpha, bool printed_diagonal = false);

/// Principal-value Hilbert transform on an interval grid: midpoint-rule sum
/// with the singular cell omitted.
Sample hilbert_transform(const Sample& f);

/// sup_B (1/mu(B)) int_B |b - b_B| dmu.
double bmo_norm(const Sample& b);

/// K_b^m f(x) = sum_y (b(x)-b(y))^m k(x,y) f(y) mu({y}) with the Hilbert
/// kernel k(x,y) = 1/(x-y) on an interval grid (diagonal omitted). m = 0
/// reduces to the Hilbert transform.
Sample cz_commutator(const Sample& f, const Sample& b, int m);

/// Commutators of the fractional integral. signed_kernel = true gives
/// I^m_{alpha,b} (bracket power), false gives the absolute-value variant.
Sample fractional_commutator(const Sample& f, const Sample& b, int m, double alpha,
                             bool signed_kernel, bool printed_diagonal = false);

/// A named pointwise operator together with a certified bound on the
/// sup-norm amplification ||Tf||_inf <= sup_gain * ||f||_inf.
struct PointOperator {
    std::string name;
    std::function<Sample(const Sample&)> apply;
    double sup_gain = 1.0;
};

PointOperator make_identity_op();
PointOperator make_maximal_op(int iterations = 1);
PointOperator make_fractional_maximal_op(const Space& space, double alpha);
PointOperator make_fractional_integral_op(const Space& space, double alpha);
PointOperator make_hilbert_op(const Space& space);
PointOperator make_cz_commutator_op(const Space& space, Sample b, int m);
PointOperator make_fractional_commutator_op(const Space& space, Sample b, int m, double alpha,
                                            bool signed_kernel);
/// Operator by CLI name: maximal, maximal^m, frac_maximal, frac_integral,
/// hilbert, commutator_cz, commutator_frac.
PointOperator make_operator(const std::string& name, SpacePtr space, double alpha = 0.25,
                            int m = 0, const Sample* b = nullptr);

struct OperatorNormEstimate {
    double lower = 0.0;      // best ratio found; certified lower bound
    double upper = 0.0;      // rigorous crude upper bound
    std::vector<double> witness;  // maximizing input
    int evaluations = 0;
};

using NormFn = std::function<double(const Sample&)>;

/// Lower bound: max ratio over ball indicators, w^{1-p'}-type profiles and
/// seeded random fields, refined by coordinate ascent. Upper bound:
/// sup_gain * ||chi_X||_target / min_x ||chi_{x}||_source, valid for any
/// monotone positively homogeneous norm pair.
OperatorNormEstimate estimate_operator_norm(const PointOperator& op, const NormFn& source_norm,
                                            const NormFn& target_norm, const Weight& w, double p,
                                            int budget = 400, unsigned long long seed = 0,
                                            int threads = 1);

}  // namespace lorext
