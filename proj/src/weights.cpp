#include "lorext/weights.hpp"

#include <cmath>

#include "lorext/operators.hpp"

namespace lorext {

namespace {

template <typename Fn>
CharacteristicValue ball_supremum(const Space& X, const Fn& per_ball) {
    CharacteristicValue best;
    best.value = 0.0;
    for (const Ball& b : enumerate_balls(X)) {
        const double v = per_ball(b);
        if (v > best.value) {
            best.value = v;
            best.witness = b;
        }
    }
    return best;
}

}  // namespace

CharacteristicValue ap_characteristic(const Weight& w, double p) {
    if (!(p > 1.0) || std::isinf(p)) throw InvalidExponent("A_p characteristic needs p in (1,inf)");
    const Space& X = *w.space;
    const double pc = conjugate(p);
    return ball_supremum(X, [&](const Ball& b) {
        double avg_w = 0.0, avg_dual = 0.0;
        for (int i : b.members) {
            avg_w += w.values[i] * X.mass(i);
            avg_dual += std::pow(w.values[i], 1.0 - pc) * X.mass(i);
        }
        avg_w /= b.measure;
        avg_dual /= b.measure;
        return avg_w * std::pow(avg_dual, p - 1.0);
    });
}

double a1_characteristic(const Weight& w) {
    const Sample mw = maximal(Sample(w.space, w.values));
    double best = 0.0;
    for (int i = 0; i < w.size(); ++i) best = std::max(best, mw.values[i] / w.values[i]);
    return best;
}

AInfPair ainf_characteristics(const Weight& w) {
    const Space& X = *w.space;
    AInfPair out;
    const CharacteristicValue expo = ball_supremum(X, [&](const Ball& b) {
        double avg_w = 0.0, avg_log = 0.0;
        for (int i : b.members) {
            avg_w += w.values[i] * X.mass(i);
            avg_log += std::log(w.values[i]) * X.mass(i);
        }
        return (avg_w / b.measure) * std::exp(-avg_log / b.measure);
    });
    out.exponential = expo.value;

    const CharacteristicValue fw = ball_supremum(X, [&](const Ball& b) {
        std::vector<double> wchi(X.size(), 0.0);
        for (int i : b.members) wchi[i] = w.values[i];
        const Sample m = maximal(Sample(w.space, std::move(wchi)));
        double integral = 0.0, wb = 0.0;
        for (int i : b.members) {
            integral += m.values[i] * X.mass(i);
            wb += w.values[i] * X.mass(i);
        }
        return integral / wb;
    });
    out.fujii_wilson = fw.value;
    return out;
}

CharacteristicValue apq_characteristic(const Weight& rho, double p, double q) {
    if (!(p > 1.0) || !(q > 1.0) || std::isinf(p) || std::isinf(q)) {
        throw InvalidExponent("A_{p,q} characteristic needs 1 < p, q < inf");
    }
    const Space& X = *rho.space;
    const double pc = conjugate(p);
    return ball_supremum(X, [&](const Ball& b) {
        double avg_q = 0.0, avg_dual = 0.0;
        for (int i : b.members) {
            avg_q += std::pow(rho.values[i], q) * X.mass(i);
            avg_dual += std::pow(rho.values[i], -pc) * X.mass(i);
        }
        avg_q /= b.measure;
        avg_dual /= b.measure;
        return avg_q * std::pow(avg_dual, q / pc);
    });
}

CharacteristicValue aps_constant(const Weight& w, double p, double s) {
    if (!(p > 1.0) || std::isinf(p)) throw InvalidExponent("A(p,s) needs p in (1,inf)");
    if (!(s >= 1.0)) throw InvalidExponent("A(p,s) needs s in [1,inf]");
    const Space& X = *w.space;
    const double pc = conjugate(p), sc = conjugate(s);
    return ball_supremum(X, [&](const Ball& b) {
        double wb = 0.0;
        for (int i : b.members) wb += w.values[i] * X.mass(i);
        // || chi_B ||_{L^{p,s}_w} = w(B)^{1/p}
        const double lhs = std::pow(wb, 1.0 / p);
        std::vector<double> inv(X.size(), 0.0);
        for (int i : b.members) inv[i] = 1.0 / w.values[i];
        const double rhs = lorentz_norm_rearr(Sample(w.space, std::move(inv)), w, pc, sc);
        return lhs * rhs / b.measure;
    });
}

double openness_eps0(const Weight& w, double p, double tau, std::optional<double> ap_char) {
    if (!(p > 1.0)) throw InvalidExponent("openness needs p > 1");
    const double ap = ap_char ? *ap_char : ap_characteristic(w, p).value;
    const double eps0 = (p - 1.0) / (1.0 + tau * ap);
    if (!(eps0 > 0.0 && eps0 < p - 1.0)) {
        throw DomainError("openness radius left (0, p-1); check tau and the characteristic");
    }
    return eps0;
}

}  // namespace lorext
