#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lorext/rearrange.hpp"

namespace lorext {

/// Exponent bundle for the grand norms. eps_grid is strictly decreasing and
/// lives inside (0, p-1).
struct LorentzParams {
    double p = 2.0;
    double s = 2.0;
    double theta = 1.0;
    std::vector<double> eps_grid;
};

/// Geometric grid of `count` points from (p-1)(1 - 1e-6) down to 1e-6.
std::vector<double> default_eps_grid(double p, int count = 64);
/// Same construction inside (0, hi).
std::vector<double> geometric_grid(double hi, int count = 64, double lo = 1e-6);

/// || f ||_{L^{p,s}_w} computed from the distribution function
/// ( s int_0^inf (w{|f|>tau})^{s/p} tau^{s-1} dtau )^{1/s}; sup form for s = inf.
double lorentz_norm_dist(const Sample& f, const Weight& w, double p, double s);

/// Same norm from the rearrangement:
/// ( (s/p) int_0^inf (t^{1/p} f*_w(t))^s dt/t )^{1/s}; sup form for s = inf.
double lorentz_norm_rearr(const Sample& f, const Weight& w, double p, double s);
double lorentz_norm_rearr(const StepFunction& fstar, double p, double s);

/// Exact-triangle variant with f*_w replaced by the running average f**_w.
double banach_norm(const Sample& f, const Weight& w, double p, double s);

/// ( int |f|^p w dmu )^{1/p}.
double lebesgue_norm(const Sample& f, const Weight& w, double p);

/// || (1/w) f ||_{L^{p,s}_w} — the dual-side space of the extrapolation
/// theorems.
double tilde_norm(const Sample& f, const Weight& w, double p, double s);

struct GrandValue {
    double value = 0.0;
    double witness_eps = 0.0;
    double witness_eps2 = 0.0;  // only for the doubly-grand norm
};

/// sup_eps eps^{theta/(p-eps)} ||f||_{L^{p-eps}_w}  (Iwaniec-Sbordone).
GrandValue iwaniec_sbordone_norm(const Sample& f, const Weight& w, double p, double theta,
                                 std::span<const double> eps_grid = {});

/// sup_eps eps^{theta/(p-eps)} ||f||_{L^{p-eps,s}_w}.
GrandValue grand_lorentz_norm(const Sample& f, const Weight& w, double p, double s, double theta,
                              std::span<const double> eps_grid = {});
GrandValue grand_lorentz_norm(const StepFunction& fstar, double p, double s, double theta,
                              std::span<const double> eps_grid = {});

/// Grandification of both parameters:
/// sup_{eps1, eps2} eps1^{theta/(p-eps1)} ||f||_{L^{p-eps1, s-eps2}_w}.
GrandValue double_grand_lorentz_norm(const Sample& f, const Weight& w, double p, double s,
                                     double theta, std::span<const double> eps1_grid = {},
                                     std::span<const double> eps2_grid = {});

/// sup_eps phi(eps)^{p-eps} ||f||_{L^{p-eps,s}_w} for increasing phi, phi(0+) = 0.
GrandValue phi_grand_lorentz_norm(const Sample& f, const Weight& w, double p, double s,
                                  const std::function<double(double)>& phi,
                                  std::span<const double> eps_grid = {});

/// Grand Lorentz norm on (0,1) from a rearrangement:
/// sup_{0<eps<eps0} ( eps^theta int_0^1 (f*)^{p-eps} w dt )^{1/(p-eps)},
/// eps0 = p-1 for p > 1 and p otherwise. w_cells is piecewise constant on
/// uniform cells of (0,1).
GrandValue lambda_grand_norm(const StepFunction& fstar, std::span<const double> w_cells, double p,
                             double theta, std::span<const double> eps_grid = {});

/// int_X f h dmu (plain mu pairing of the Koethe duality).
double dual_pairing(const Sample& f, const Sample& h);

struct KotheDualValue {
    double value = 0.0;          // best ratio found (lower bound of the true sup)
    std::vector<double> witness; // maximizing h
};

/// sup over a finite witness family of |int f h dmu| / ||w^{-1} h||_{L^{p',s'}_w}.
/// Witnesses: w-scaled superlevel indicators of |f| and of |f| w^{p'-1},
/// the |f|^{p-1}-profile, and seeded random sign patterns.
KotheDualValue kothe_dual_norm(const Sample& f, const Weight& w, double p, double s,
                               unsigned long long seed = 0, int random_count = 8);

/// || f ||_{E^{q0}} = || |f|^{q0} ||_E^{1/q0} with E = L^{p,s}_w.
double convexified_norm(const Sample& f, const Weight& w, double p, double s, double q0);

struct HolderSplit {
    double lhs = 0.0;   // || f1 f2 ||_{L^{p,s}_w}
    double rhs = 0.0;   // || f1 ||_{L^{p1,s1}_w} * || f2 ||_{L^{p2,s2}_w}
    double ratio = 0.0; // lhs / rhs (0 when rhs == 0)
};

/// Checks 1/p = 1/p1 + 1/p2, 1/s = 1/s1 + 1/s2 and evaluates both sides.
HolderSplit holder_split(const Sample& f1, const Sample& f2, const Weight& w, double p, double s,
                         double p1, double s1, double p2, double s2);

double conjugate(double p);  // p' = p/(p-1); 1 -> inf, inf -> 1

}  // namespace lorext
