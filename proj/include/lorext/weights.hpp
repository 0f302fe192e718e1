#pragma once

#include <optional>

#include "lorext/lorentz.hpp"
#include "lorext/space.hpp"

namespace lorext {

struct CharacteristicValue {
    double value = 1.0;
    Ball witness;  // extremal ball (members empty for pointwise characteristics)
};

/// [w]_{A_p} = sup_B (avg_B w) (avg_B w^{1-p'})^{p-1}, exact over all balls.
CharacteristicValue ap_characteristic(const Weight& w, double p);

/// [w]_{A_1} = max_x (Mw)(x) / w(x).
double a1_characteristic(const Weight& w);

struct AInfPair {
    double exponential = 1.0;   // sup_B (avg_B w) exp(avg_B log w^{-1})
    double fujii_wilson = 1.0;  // sup_B (1/wB) int_B M(w chi_B) dmu
};
AInfPair ainf_characteristics(const Weight& w);

/// [rho]_{A_{p,q}} = sup_B (avg_B rho^q) (avg_B rho^{-p'})^{q/p'}.
CharacteristicValue apq_characteristic(const Weight& rho, double p, double q);

/// sup_B ||chi_B||_{L^{p,s}_w} ||w^{-1} chi_B||_{L^{p',s'}_w} / mu(B).
CharacteristicValue aps_constant(const Weight& w, double p, double s);

/// Openness radius eps0 = (p-1) / (1 + tau_{kappa,mu} [w]_{A_p}).
double openness_eps0(const Weight& w, double p, double tau,
                     std::optional<double> ap_char = std::nullopt);

}  // namespace lorext
