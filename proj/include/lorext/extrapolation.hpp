#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lorext/operators.hpp"
#include "lorext/weights.hpp"

namespace lorext {

/// Nonnegative nondecreasing rate function N(.). Monotonicity is probed on a
/// grid when constructed from a callable.
class RateFunction {
  public:
    RateFunction() : fn_([](double x) { return x; }), name_("identity") {}
    RateFunction(std::function<double(double)> fn, std::string name);
    static RateFunction identity() { return RateFunction(); }
    static RateFunction power(double e);

    double operator()(double x) const { return fn_(x); }
    const std::string& name() const { return name_; }

  private:
    std::function<double(double)> fn_;
    std::string name_;
};

/// gamma = 1/q0 + 1/p0' (p0 = 1 gives 1/p0' = 0).
double gamma_exponent(double p0, double q0);

struct ConstantValue {
    double value = 0.0;
    std::string branch;  // which case fired
    double gamma = 0.0;  // off-diagonal only
};

/// Diagonal-case characteristic bound:
///   p < p0: N( (2 c p')^{p0-p} [w]^{(p'-1)(p0-p)} )
///   p > p0: N( (2 c p')^{(p0-p)/(p-1)} [w]^{(2p0+p p0+1)/(p-1)^2} )
///   p = p0: N([w]).
ConstantValue k_diag(double ap_char, double p, double p0, const RateFunction& N, double c_bar);

/// Diagonal operator-norm form: K(w, ||M||, p, p0) with the dual maximal norm
/// ||M||_{L^{p'}_{w^{1-p'}}} supplied for the p > p0 branch.
ConstantValue k_diag_opnorm(double ap_char, double p, double p0, const RateFunction& N,
                            double m_norm, double m_norm_dual);

enum class OffdiagForm {
    Remark,   // exponent 1 + gamma (q - q0) p' / q on the characteristic
    Theorem,  // exponent 1 + gamma p' (q0 - q) / q (as printed in the estimate)
};

/// Off-diagonal characteristic bound; `characteristic` is the A_{1+q/p'}
/// value of the weight in the hypothesis normalization. Requires
/// 1/p - 1/q = 1/p0 - 1/q0. Both printed forms are exposed.
ConstantValue k_offdiag(double characteristic, double p, double q, double p0, double q0,
                        const RateFunction& N, double c_bar,
                        OffdiagForm form = OffdiagForm::Theorem);

/// Off-diagonal operator-norm form of the extrapolation constant.
ConstantValue k_offdiag_opnorm(double apq_char, double p, double q, double p0, double q0,
                               const RateFunction& N, double m_norm);

/// || M ||_{L^{p,s}_w} bound via Marcinkiewicz interpolation between the
/// openness exponents: C 2^{1/p} eps0^{-1} [ p [w]_{A_{p-eps0}} +
/// (p-eps0) [w]_{A_{p+eps0}} ]. The structural C is carried as slack = 1.
struct MaximalBound {
    double value = 0.0;
    double eps0 = 0.0;
    double ap_minus = 0.0;
    double ap_plus = 0.0;
    double slack = 1.0;  // unspecified structural constant, reported not folded in
};
MaximalBound maximal_lorentz_bound(const Weight& w, double p, double tau);

/// || w^{-1} M f ||_{L^{p',s'}_w} <= bound * || w^{-1} f ||_{L^{p',s'}_w}:
/// C 2^{1/p'} eps0^{-1} [ p' [w]_{A_{p-eps0}} + (p-eps0)' [w]_{A_{p+eps0}} ].
MaximalBound dual_maximal_lorentz_bound(const Weight& w, double p, double tau);

struct K1Value {
    double value = 0.0;          // default (proof-usage) form
    double printed_value = 0.0;  // form with the ambient p in the exponents
    std::string branch;
    double tilde_m_bound = 0.0;  // certified bound used for ||M|| on the tilde space
    double grand_sup = 0.0;      // sup of the constant over the eps grid at p-eps
};

/// Lorentz-space diagonal constant K1(||M||_{tilde L^{(p/q0)',(s/q0)'}_w}, p, s)
/// with q0 chosen so that p - eps0 < p/q0 < p.
K1Value k1_lorentz(const Weight& w, double p, double s, double q0, double p0,
                   const RateFunction& N, double tau, double c_bar,
                   std::span<const double> eps_grid = {});

struct PhiPsi {
    double phi = 0.0;
    double psi = 0.0;
};

/// Phi(x) = [ (x-q)/(1 - A(x-q)) + p ]^{1-(x-q)A}, Psi(x) = Phi(x^theta).
PhiPsi phi_psi(double x, double p, double q, double theta, double A);
/// Fractional-case variant with A = alpha.
PhiPsi phi_psi_frac(double t, double p, double q, double theta, double alpha);

/// Solves 1/(p-eta) - 1/(q-eps) = A for eta.
double eta_from_epsilon(double eps, double p, double q, double A);

struct RubioResult {
    Sample iterate;          // truncated R h
    double tail_bound = 0.0; // certified dual-norm bound on the dropped tail
    Sample last_term;        // M^K h / (2 N)^K, the pointwise tail witness
    std::vector<double> term_norms;  // dual norms of the partial terms
};

/// Truncated Rubio de Francia iteration R h = sum_k M^k h / (2^k N_up^k).
/// N_up must be a certified upper bound for ||M|| on the dual space; a term
/// with ||M^k h|| > N_up^k ||h|| invalidates the certificate (NupTooSmall).
RubioResult rubio_iterate(const Sample& h, const NormFn& dual_norm, double n_up, int k_terms);

/// Certified upper bound for ||M|| on L^p_w: min of the characteristic bound
/// c_bar p' [w]_{A_p}^{1/(p-1)} and the crude bound (w(X)/min_x w mu)^{1/p}.
double maximal_norm_upper(const Weight& w, double p, double c_bar);

}  // namespace lorext
