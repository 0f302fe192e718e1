#include "lorext/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lorext {

namespace {

void check_ps(double p, double s) {
    if (!(p > 0.0) || std::isinf(p)) throw InvalidExponent("p must be finite and positive");
    if (!(s >= 1.0)) throw InvalidExponent("s must be >= 1 (or infinity)");
}

}  // namespace

double conjugate(double p) {
    if (p == 1.0) return kInfinity;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

std::vector<double> geometric_grid(double hi, int count, double lo) {
    if (!(hi > lo) || count < 1) throw InputError("bad grid bounds");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = hi;
        return g;
    }
    const double ratio = std::log(lo / hi) / (count - 1);
    for (int i = 0; i < count; ++i) g[i] = hi * std::exp(ratio * i);
    return g;
}

std::vector<double> default_eps_grid(double p, int count) {
    if (!(p > 1.0)) throw InvalidExponent("grand norms need p > 1");
    return geometric_grid((p - 1.0) * (1.0 - 1e-6), count);
}

double lorentz_norm_dist(const Sample& f, const Weight& w, double p, double s) {
    check_ps(p, s);
    const StepFunction lambda = distribution_function(f, w);
    if (lambda.is_zero()) return 0.0;
    if (std::isinf(s)) {
        // sup_tau tau * lambda(tau)^{1/p}
        return lambda.pow(1.0 / p).sup_power(1.0);
    }
    return std::pow(s * lambda.pow(s / p).power_moment(s), 1.0 / s);
}

double lorentz_norm_rearr(const StepFunction& fstar, double p, double s) {
    check_ps(p, s);
    if (fstar.is_zero()) return 0.0;
    if (std::isinf(s)) return fstar.sup_power(p);
    return std::pow((s / p) * fstar.pow(s).power_moment(s / p), 1.0 / s);
}

double lorentz_norm_rearr(const Sample& f, const Weight& w, double p, double s) {
    return lorentz_norm_rearr(rearrangement(f, w), p, s);
}

double banach_norm(const Sample& f, const Weight& w, double p, double s) {
    if (!(p > 1.0)) throw InvalidExponent("banach norm needs p in (1, inf)");
    if (!(s >= 1.0)) throw InvalidExponent("s must be >= 1 (or infinity)");
    const RunningAverage avg = double_star(f, w);
    if (avg.base().is_zero()) return 0.0;
    if (std::isinf(s)) return avg.sup_power(p);
    return avg.lorentz_integral(p, s);
}

double lebesgue_norm(const Sample& f, const Weight& w, double p) {
    if (!(p > 0.0)) throw InvalidExponent("lebesgue norm needs p > 0");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        acc += std::pow(std::abs(f.values[i]), p) * w.values[i] * w.space->mass(i);
    }
    return std::pow(acc, 1.0 / p);
}

double tilde_norm(const Sample& f, const Weight& w, double p, double s) {
    std::vector<double> v(f.values);
    for (int i = 0; i < f.size(); ++i) v[i] /= w.values[i];
    return lorentz_norm_rearr(Sample(f.space, std::move(v)), w, p, s);
}

GrandValue iwaniec_sbordone_norm(const Sample& f, const Weight& w, double p, double theta,
                                 std::span<const double> eps_grid) {
    if (!(theta > 0.0)) throw InvalidExponent("theta must be positive");
    std::vector<double> grid;
    if (eps_grid.empty()) {
        grid = default_eps_grid(p);
        eps_grid = grid;
    }
    GrandValue out;
    for (double eps : eps_grid) {
        const double v = std::pow(eps, theta / (p - eps)) * lebesgue_norm(f, w, p - eps);
        if (v > out.value) {
            out.value = v;
            out.witness_eps = eps;
        }
    }
    return out;
}

GrandValue grand_lorentz_norm(const StepFunction& fstar, double p, double s, double theta,
                              std::span<const double> eps_grid) {
    if (!(theta > 0.0)) throw InvalidExponent("theta must be positive");
    std::vector<double> grid;
    if (eps_grid.empty()) {
        grid = default_eps_grid(p);
        eps_grid = grid;
    }
    GrandValue out;
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < p - 1.0 + 1e-15)) {
            throw InvalidExponent("eps grid must lie inside (0, p-1)");
        }
        const double v = std::pow(eps, theta / (p - eps)) * lorentz_norm_rearr(fstar, p - eps, s);
        if (v > out.value) {
            out.value = v;
            out.witness_eps = eps;
        }
    }
    return out;
}

GrandValue grand_lorentz_norm(const Sample& f, const Weight& w, double p, double s, double theta,
                              std::span<const double> eps_grid) {
    return grand_lorentz_norm(rearrangement(f, w), p, s, theta, eps_grid);
}

GrandValue double_grand_lorentz_norm(const Sample& f, const Weight& w, double p, double s,
                                     double theta, std::span<const double> eps1_grid,
                                     std::span<const double> eps2_grid) {
    if (!(s > 1.0) || std::isinf(s)) {
        throw InvalidExponent("doubly-grand norm needs finite s > 1");
    }
    std::vector<double> g1, g2;
    if (eps1_grid.empty()) {
        g1 = default_eps_grid(p);
        eps1_grid = g1;
    }
    if (eps2_grid.empty()) {
        g2 = geometric_grid((s - 1.0) * (1.0 - 1e-6));
        eps2_grid = g2;
    }
    const StepFunction fstar = rearrangement(f, w);
    GrandValue out;
    for (double e1 : eps1_grid) {
        const double head = std::pow(e1, theta / (p - e1));
        for (double e2 : eps2_grid) {
            const double v = head * lorentz_norm_rearr(fstar, p - e1, s - e2);
            if (v > out.value) {
                out.value = v;
                out.witness_eps = e1;
                out.witness_eps2 = e2;
            }
        }
    }
    return out;
}

GrandValue phi_grand_lorentz_norm(const Sample& f, const Weight& w, double p, double s,
                                  const std::function<double(double)>& phi,
                                  std::span<const double> eps_grid) {
    std::vector<double> grid;
    if (eps_grid.empty()) {
        grid = default_eps_grid(p);
        eps_grid = grid;
    }
    // phi must be positive and increasing on the grid (grid is decreasing).
    double prev = kInfinity;
    for (double eps : eps_grid) {
        const double v = phi(eps);
        if (!(v > 0.0) || v > prev) throw InvalidPhi("phi must be positive and increasing");
        prev = v;
    }
    const StepFunction fstar = rearrangement(f, w);
    GrandValue out;
    for (double eps : eps_grid) {
        const double v = std::pow(phi(eps), p - eps) * lorentz_norm_rearr(fstar, p - eps, s);
        if (v > out.value) {
            out.value = v;
            out.witness_eps = eps;
        }
    }
    return out;
}

GrandValue lambda_grand_norm(const StepFunction& fstar, std::span<const double> w_cells, double p,
                             double theta, std::span<const double> eps_grid) {
    if (!(p > 0.0)) throw InvalidExponent("lambda grand norm needs p > 0");
    if (w_cells.empty()) throw InputError("weight cells required");
    const double eps0 = p > 1.0 ? p - 1.0 : p;
    std::vector<double> grid;
    if (eps_grid.empty()) {
        grid = geometric_grid(eps0 * (1.0 - 1e-6));
        eps_grid = grid;
    }
    const int m = static_cast<int>(w_cells.size());
    std::vector<double> knots(m + 1), levels(w_cells.begin(), w_cells.end());
    for (int i = 0; i <= m; ++i) knots[i] = static_cast<double>(i) / m;
    knots[0] = 0.0;
    knots[m] = 1.0;
    const StepFunction wstep(std::move(knots), std::move(levels));
    GrandValue out;
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < eps0)) throw InvalidExponent("eps grid must lie inside (0, eps0)");
        const double integ = StepFunction::product(fstar.pow(p - eps), wstep).integral(1.0);
        const double v = std::pow(std::pow(eps, theta) * integ, 1.0 / (p - eps));
        if (v > out.value) {
            out.value = v;
            out.witness_eps = eps;
        }
    }
    return out;
}

double dual_pairing(const Sample& f, const Sample& h) {
    if (f.space != h.space) throw InputError("pairing needs a common space");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) acc += f.values[i] * h.values[i] * f.space->mass(i);
    return acc;
}

KotheDualValue kothe_dual_norm(const Sample& f, const Weight& w, double p, double s,
                               unsigned long long seed, int random_count) {
    if (!(p > 1.0)) throw InvalidExponent("dual norm needs p > 1");
    const double pc = conjugate(p), sc = conjugate(s);
    const int n = f.size();
    KotheDualValue best;
    auto consider = [&](const std::vector<double>& h) {
        Sample hs(f.space, h);
        const double denom = tilde_norm(hs, w, pc, sc);
        if (!(denom > 0.0)) return;
        const double r = std::abs(dual_pairing(f, hs)) / denom;
        if (r > best.value) {
            best.value = r;
            best.witness = h;
        }
    };
    auto sign = [](double x) { return x < 0.0 ? -1.0 : 1.0; };

    // Superlevel indicators of |f| and of |f| w^{p'-1}, scaled by w.
    for (int variant = 0; variant < 2; ++variant) {
        std::vector<double> keyed(n);
        for (int i = 0; i < n; ++i) {
            keyed[i] = std::abs(f.values[i]) *
                       (variant == 0 ? 1.0 : std::pow(w.values[i], pc - 1.0));
        }
        std::vector<double> cuts(keyed);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (double c : cuts) {
            if (c == 0.0) continue;
            std::vector<double> h(n, 0.0);
            for (int i = 0; i < n; ++i) {
                if (keyed[i] >= c) h[i] = sign(f.values[i]) * w.values[i];
            }
            consider(h);
        }
    }
    // Lebesgue-extremal profile.
    {
        std::vector<double> h(n);
        for (int i = 0; i < n; ++i) {
            h[i] = sign(f.values[i]) * std::pow(std::abs(f.values[i]), p - 1.0) * w.values[i];
        }
        consider(h);
    }
    // Seeded random sign patterns.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int r = 0; r < random_count; ++r) {
        std::vector<double> h(n);
        for (int i = 0; i < n; ++i) h[i] = (coin(rng) ? 1.0 : -1.0) * w.values[i];
        consider(h);
    }
    return best;
}

double convexified_norm(const Sample& f, const Weight& w, double p, double s, double q0) {
    if (!(q0 > 0.0)) throw ExponentOutOfRange("q0 must be positive");
    std::vector<double> v(f.values);
    for (double& x : v) x = std::pow(std::abs(x), q0);
    return std::pow(lorentz_norm_rearr(Sample(f.space, std::move(v)), w, p, s), 1.0 / q0);
}

HolderSplit holder_split(const Sample& f1, const Sample& f2, const Weight& w, double p, double s,
                         double p1, double s1, double p2, double s2) {
    auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
    if (std::abs(inv(p) - inv(p1) - inv(p2)) > 1e-12 ||
        std::abs(inv(s) - inv(s1) - inv(s2)) > 1e-12) {
        throw SplitMismatch("need 1/p = 1/p1 + 1/p2 and 1/s = 1/s1 + 1/s2");
    }
    if (f1.space != f2.space) throw InputError("samples live on different spaces");
    std::vector<double> prod(f1.values);
    for (int i = 0; i < f1.size(); ++i) prod[i] *= f2.values[i];
    HolderSplit out;
    out.lhs = lorentz_norm_rearr(Sample(f1.space, std::move(prod)), w, p, s);
    out.rhs = lorentz_norm_rearr(f1, w, p1, s1) * lorentz_norm_rearr(f2, w, p2, s2);
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

}  // namespace lorext
