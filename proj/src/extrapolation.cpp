#include "lorext/extrapolation.hpp"

#include <algorithm>
#include <cmath>

namespace lorext {

RateFunction::RateFunction(std::function<double(double)> fn, std::string name)
    : fn_(std::move(fn)), name_(std::move(name)) {
    double prev = -kInfinity;
    for (double x : {0.5, 1.0, 2.0, 4.0, 16.0, 256.0}) {
        const double v = fn_(x);
        if (!(v >= 0.0) || v < prev) throw InputError("rate function must be >= 0 and nondecreasing");
        prev = v;
    }
}

RateFunction RateFunction::power(double e) {
    if (!(e >= 0.0)) throw InputError("rate power must be >= 0");
    return RateFunction([e](double x) { return std::pow(x, e); },
                        "x^" + std::to_string(e));
}

double gamma_exponent(double p0, double q0) {
    if (!(p0 >= 1.0)) throw InvalidExponent("p0 must be in [1, inf)");
    if (!(q0 > 0.0)) throw InvalidExponent("q0 must be positive");
    const double p0c = conjugate(p0);
    return 1.0 / q0 + (std::isinf(p0c) ? 0.0 : 1.0 / p0c);
}

ConstantValue k_diag(double ap_char, double p, double p0, const RateFunction& N, double c_bar) {
    if (!(p > 1.0) || !(p0 >= 1.0)) throw InvalidExponent("k_diag needs p > 1, p0 >= 1");
    ConstantValue out;
    const double pc = conjugate(p);
    if (p < p0) {
        out.branch = "p<p0";
        out.value = N(std::pow(2.0 * c_bar * pc, p0 - p) * std::pow(ap_char, (pc - 1.0) * (p0 - p)));
    } else if (p > p0) {
        out.branch = "p>p0";
        out.value = N(std::pow(2.0 * c_bar * pc, (p0 - p) / (p - 1.0)) *
                      std::pow(ap_char, (2.0 * p0 + p * p0 + 1.0) / ((p - 1.0) * (p - 1.0))));
    } else {
        out.branch = "p=p0";
        out.value = N(ap_char);
    }
    return out;
}

ConstantValue k_diag_opnorm(double ap_char, double p, double p0, const RateFunction& N,
                            double m_norm, double m_norm_dual) {
    if (!(p > 1.0) || !(p0 >= 1.0)) throw InvalidExponent("k_diag needs p > 1, p0 >= 1");
    ConstantValue out;
    if (p < p0) {
        out.branch = "p<p0";
        out.value = N(ap_char * std::pow(2.0 * m_norm, p0 - p));
    } else if (p > p0) {
        out.branch = "p>p0";
        out.value = N(std::pow(ap_char, (p0 - 1.0) / (p - 1.0)) *
                      std::pow(2.0 * m_norm_dual, (p - p0) / (p - 1.0)));
    } else {
        out.branch = "p=p0";
        out.value = N(ap_char);
    }
    return out;
}

namespace {

void check_offdiag_scaling(double p, double q, double p0, double q0) {
    if (std::abs((1.0 / p - 1.0 / q) - (1.0 / p0 - 1.0 / q0)) > 1e-12) {
        throw ScalingMismatch("need 1/p - 1/q = 1/p0 - 1/q0");
    }
}

}  // namespace

ConstantValue k_offdiag(double characteristic, double p, double q, double p0, double q0,
                        const RateFunction& N, double c_bar, OffdiagForm form) {
    if (!(p > 1.0) || !(q > 0.0) || !(p0 >= 1.0) || !(q0 > 0.0)) {
        throw InvalidExponent("k_offdiag exponent out of range");
    }
    check_offdiag_scaling(p, q, p0, q0);
    ConstantValue out;
    out.gamma = gamma_exponent(p0, q0);
    const double pc = conjugate(p);
    const double base = 2.0 * c_bar * (1.0 + q / pc);
    if (q < q0) {
        out.branch = "q<q0";
        const double char_exp = form == OffdiagForm::Remark
                                    ? 1.0 + out.gamma * (q - q0) * pc / q
                                    : 1.0 + out.gamma * pc * (q0 - q) / q;
        out.value = N(std::pow(base, out.gamma * (q - q0)) * std::pow(characteristic, char_exp));
    } else if (q > q0) {
        out.branch = "q>q0";
        out.value =
            N(std::pow(base, out.gamma * (q - q0) / (out.gamma * q - 1.0)) * characteristic);
    } else {
        out.branch = "q=q0";
        out.value = N(characteristic);
    }
    return out;
}

ConstantValue k_offdiag_opnorm(double apq_char, double p, double q, double p0, double q0,
                               const RateFunction& N, double m_norm) {
    if (!(p > 1.0) || !(q > 0.0) || !(p0 >= 1.0) || !(q0 > 0.0)) {
        throw InvalidExponent("k_offdiag exponent out of range");
    }
    check_offdiag_scaling(p, q, p0, q0);
    ConstantValue out;
    out.gamma = gamma_exponent(p0, q0);
    if (q < q0) {
        out.branch = "q<q0";
        out.value = N(apq_char * std::pow(2.0 * m_norm, out.gamma * (q - q0)));
    } else if (q > q0) {
        out.branch = "q>q0";
        out.value = N(std::pow(apq_char, (out.gamma * q0 - 1.0) / (out.gamma * q - 1.0)) *
                      std::pow(2.0 * m_norm, out.gamma * (q - q0) / (out.gamma * q - 1.0)));
    } else {
        out.branch = "q=q0";
        out.value = N(apq_char);
    }
    return out;
}

MaximalBound maximal_lorentz_bound(const Weight& w, double p, double tau) {
    if (!(p > 1.0)) throw InvalidExponent("maximal bound needs p > 1");
    MaximalBound out;
    const double ap = ap_characteristic(w, p).value;
    out.eps0 = openness_eps0(w, p, tau, ap);
    out.ap_minus = ap_characteristic(w, p - out.eps0).value;
    out.ap_plus = ap_characteristic(w, p + out.eps0).value;
    out.value = std::pow(2.0, 1.0 / p) / out.eps0 *
                (p * out.ap_minus + (p - out.eps0) * out.ap_plus);
    return out;
}

MaximalBound dual_maximal_lorentz_bound(const Weight& w, double p, double tau) {
    if (!(p > 1.0)) throw InvalidExponent("dual maximal bound needs p > 1");
    MaximalBound out;
    const double pc = conjugate(p);
    const double ap = ap_characteristic(w, p).value;
    out.eps0 = openness_eps0(w, p, tau, ap);
    out.ap_minus = ap_characteristic(w, p - out.eps0).value;
    out.ap_plus = ap_characteristic(w, p + out.eps0).value;
    const double pmc = conjugate(p - out.eps0);
    out.value = std::pow(2.0, 1.0 / pc) / out.eps0 * (pc * out.ap_minus + pmc * out.ap_plus);
    return out;
}

K1Value k1_lorentz(const Weight& w, double p, double s, double q0, double p0,
                   const RateFunction& N, double tau, double c_bar,
                   std::span<const double> eps_grid) {
    if (!(p > 1.0) || !(s > 1.0) || std::isinf(s)) {
        throw InvalidExponent("k1 needs finite p, s > 1");
    }
    const double ap = ap_characteristic(w, p).value;
    const double eps0 = openness_eps0(w, p, tau, ap);
    if (!(q0 > 1.0) || !(q0 < p) || !(p - eps0 < p / q0)) {
        throw Q0OutOfRange("q0 must satisfy 1 < q0 < p and p - eps0 < p/q0");
    }
    auto eval_at = [&](double pp) -> K1Value {
        K1Value out;
        // ||M|| on the tilde space via the dual Marcinkiewicz bound at pp/q0;
        // the bound of that proposition does not depend on the second index.
        const MaximalBound mb = dual_maximal_lorentz_bound(w, pp / q0, tau);
        out.tilde_m_bound = mb.value;
        const double q0c = conjugate(q0);
        if (q0 < p0) {
            out.branch = "q0<p0";
            out.value = N(std::pow(2.0 * c_bar * q0c, p0 - q0) *
                          std::pow(mb.value, (q0c - 1.0) * (p0 - q0)));
            out.printed_value = N(std::pow(2.0 * c_bar * q0c, p0 - pp) *
                                  std::pow(mb.value, (q0c - 1.0) * (p0 - q0c)));
        } else if (q0 > p0) {
            out.branch = "q0>p0";
            const double num = 2.0 * p0 + q0 * p0 + 1.0;
            out.value = N(std::pow(2.0 * c_bar * q0c, (p0 - q0) / (q0 - 1.0)) *
                          std::pow(mb.value, num / ((q0 - 1.0) * (q0 - 1.0))));
            out.printed_value = N(std::pow(2.0 * c_bar * q0c, (p0 - q0) / (q0 * pp - 1.0)) *
                                  std::pow(mb.value, num / ((q0 - 1.0) * (q0 - 1.0))));
        } else {
            out.branch = "q0=p0";
            out.value = out.printed_value = N(mb.value);
        }
        return out;
    };
    K1Value out = eval_at(p);
    // Stability over the grand grid: record sup of the constant at (p-eps, s).
    std::vector<double> grid;
    if (eps_grid.empty()) {
        grid = geometric_grid(std::min(eps0, p - 1.0 - eps0) * 0.5, 16);
        eps_grid = grid;
    }
    out.grand_sup = out.value;
    for (double eps : eps_grid) {
        const double pp = p - eps;
        if (!(pp > 1.0) || !(q0 < pp) || !(pp - eps0 < pp / q0)) continue;
        out.grand_sup = std::max(out.grand_sup, eval_at(pp).value);
    }
    return out;
}

PhiPsi phi_psi(double x, double p, double q, double theta, double A) {
    if (!(theta > 0.0)) throw InvalidExponent("theta must be positive");
    PhiPsi out;
    auto phi_of = [&](double t) {
        const double denom = 1.0 - A * (t - q);
        if (!(denom > 0.0)) throw DomainError("1 - A(x-q) must stay positive");
        const double bracket = (t - q) / denom + p;
        if (bracket < 0.0) throw DomainError("bracket of the exponent function went negative");
        return std::pow(bracket, 1.0 - (t - q) * A);
    };
    out.phi = phi_of(x);
    out.psi = phi_of(std::pow(x, theta));
    return out;
}

PhiPsi phi_psi_frac(double t, double p, double q, double theta, double alpha) {
    return phi_psi(t, p, q, theta, alpha);
}

double eta_from_epsilon(double eps, double p, double q, double A) {
    if (!(eps >= 0.0 && eps < q)) throw DomainError("need 0 <= eps < q");
    const double denom = A + 1.0 / (q - eps);
    if (!(denom > 0.0)) throw DomainError("pairing relation degenerate");
    const double eta = p - 1.0 / denom;
    if (!(eta >= 0.0 && eta < p)) throw DomainError("eta left [0, p)");
    return eta;
}

RubioResult rubio_iterate(const Sample& h, const NormFn& dual_norm, double n_up, int k_terms) {
    if (k_terms < 1) throw InputError("need at least one term");
    if (!(n_up > 0.0)) throw NupTooSmall("certified bound must be positive");
    for (double v : h.values) {
        if (v < 0.0) throw InputError("rubio iteration needs h >= 0");
    }
    const double h_norm = dual_norm(h);
    RubioResult out;
    out.iterate = h;
    out.term_norms.push_back(h_norm);
    Sample mk = h;  // M^k h
    double scale = 1.0;
    for (int k = 1; k <= k_terms; ++k) {
        mk = maximal(mk);
        scale /= 2.0 * n_up;
        const double mk_norm = dual_norm(mk);
        // ||M^k h|| <= N_up^k ||h|| certifies the geometric bound.
        if (mk_norm > std::pow(n_up, k) * h_norm * (1.0 + 1e-9)) {
            throw NupTooSmall("term " + std::to_string(k) +
                              " exceeded the certified geometric bound");
        }
        Sample term(h.space, mk.values);
        for (double& v : term.values) v *= scale;
        if (k < k_terms) {
            for (int i = 0; i < h.size(); ++i) out.iterate.values[i] += term.values[i];
            out.term_norms.push_back(mk_norm * scale);
        } else {
            out.last_term = term;  // first dropped term, reported as tail witness
        }
    }
    // Dropped tail sum_{k >= K} M^k h/(2 N)^k has dual norm <= ||h|| 2^{1-K}.
    out.tail_bound = h_norm * std::pow(2.0, 1.0 - k_terms);
    return out;
}

double maximal_norm_upper(const Weight& w, double p, double c_bar) {
    if (!(p > 1.0)) throw InvalidExponent("upper bound needs p > 1");
    const double buckley =
        c_bar * conjugate(p) * std::pow(ap_characteristic(w, p).value, 1.0 / (p - 1.0));
    double min_atom = kInfinity;
    for (int i = 0; i < w.size(); ++i) {
        min_atom = std::min(min_atom, w.values[i] * w.space->mass(i));
    }
    const double crude = std::pow(w.total() / min_atom, 1.0 / p);
    return std::min(buckley, crude);
}

}  // namespace lorext
