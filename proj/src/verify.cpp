#include "lorext/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "lorext/io.hpp"

namespace lorext {

std::string Report::to_json_string() const {
    json j;
    j["theorem"] = theorem;
    j["pass"] = pass;
    j["payload"] = payload;
    j["footnotes"] = footnotes;
    return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "theorem,quantity,value\n";
    std::function<void(const json&, const std::string&)> walk = [&](const json& node,
                                                                    const std::string& prefix) {
        if (node.is_number()) {
            os << theorem << "," << prefix << "," << format_float(node.get<double>()) << "\n";
        } else if (node.is_boolean()) {
            os << theorem << "," << prefix << "," << (node.get<bool>() ? 1 : 0) << "\n";
        } else if (node.is_object()) {
            for (const auto& [k, v] : node.items()) {
                walk(v, prefix.empty() ? k : prefix + "." + k);
            }
        } else if (node.is_array()) {
            int i = 0;
            for (const auto& v : node) walk(v, prefix + "[" + std::to_string(i++) + "]");
        }
    };
    walk(payload, "");
    return os.str();
}

ScenarioConfig scenario_from_json(const json& j) {
    require_keys(j,
                 {"theorem", "space", "weight_family", "exponents", "budget", "slack",
                  "stability_tol", "seed", "grid_refine", "allow_class_violation", "threads"},
                 "scenario");
    ScenarioConfig cfg;
    cfg.theorem = j.at("theorem").get<std::string>();
    if (j.contains("space")) cfg.space = j.at("space");
    if (j.contains("weight_family")) {
        const json& wf = j.at("weight_family");
        require_keys(wf, {"kind", "exponents"}, "weight_family");
        cfg.weight_kind = wf.at("kind").get<std::string>();
        if (wf.contains("exponents")) {
            cfg.weight_exponents = wf.at("exponents").get<std::vector<double>>();
        }
    }
    if (j.contains("exponents")) {
        const json& e = j.at("exponents");
        require_keys(e, {"p", "s", "theta", "alpha", "m"}, "exponents");
        if (e.contains("p")) cfg.p = e.at("p").get<double>();
        if (e.contains("s")) cfg.s = e.at("s").get<double>();
        if (e.contains("theta")) cfg.theta = e.at("theta").get<double>();
        if (e.contains("alpha")) cfg.alpha = e.at("alpha").get<double>();
        if (e.contains("m")) cfg.m = e.at("m").get<int>();
    }
    if (j.contains("budget")) cfg.budget = j.at("budget").get<int>();
    if (j.contains("slack")) cfg.slack = j.at("slack").get<double>();
    if (j.contains("stability_tol")) cfg.stability_tol = j.at("stability_tol").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned long long>();
    if (j.contains("grid_refine")) cfg.grid_refine = j.at("grid_refine").get<bool>();
    if (j.contains("allow_class_violation")) {
        cfg.allow_class_violation = j.at("allow_class_violation").get<bool>();
    }
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["theorem"] = cfg.theorem;
    j["space"] = cfg.space;
    j["weight_family"] = json{{"kind", cfg.weight_kind}, {"exponents", cfg.weight_exponents}};
    j["exponents"] = json{{"p", cfg.p},         {"s", cfg.s}, {"theta", cfg.theta},
                          {"alpha", cfg.alpha}, {"m", cfg.m}};
    j["budget"] = cfg.budget;
    j["slack"] = cfg.slack;
    j["stability_tol"] = cfg.stability_tol;
    j["seed"] = cfg.seed;
    j["grid_refine"] = cfg.grid_refine;
    j["allow_class_violation"] = cfg.allow_class_violation;
    j["threads"] = cfg.threads;
    return j;
}

namespace {

// Indicator norms in the grand scales have the closed form
// sup_eps eps^{theta/(p-eps)} (wB)^{1/(p-eps)}.
double indicator_grand_norm(double wb, double p, double theta) {
    double best = 0.0;
    for (double eps : default_eps_grid(p)) {
        best = std::max(best, std::pow(eps, theta / (p - eps)) * std::pow(wb, 1.0 / (p - eps)));
    }
    return best;
}

double indicator_grand_witness(double wb, double p, double theta) {
    double best = 0.0, arg = 0.0;
    for (double eps : default_eps_grid(p)) {
        const double v = std::pow(eps, theta / (p - eps)) * std::pow(wb, 1.0 / (p - eps));
        if (v > best) {
            best = v;
            arg = eps;
        }
    }
    return arg;
}

bool power_weight_admissible(double a, double class_index) {
    return a > -1.0 && a < class_index - 1.0;
}

}  // namespace

std::vector<std::pair<std::string, Sample>> test_family(const SpacePtr& space, const Weight& w,
                                                        double p, unsigned long long seed) {
    std::vector<std::pair<std::string, Sample>> family;
    const int n = space->size();
    const double pc = conjugate(p);
    if (space->is_interval_grid()) {
        auto sampled = [&](const std::string& name, const std::function<double(double)>& g) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = g(space->coordinate(i));
            family.emplace_back(name, Sample(space, std::move(v)));
        };
        sampled("one", [](double) { return 1.0; });
        sampled("linear", [](double x) { return x; });
        sampled("spike", [](double x) { return std::pow(x, -0.2); });
        sampled("smooth", [](double x) { return 1.2 + std::sin(3.0 * x); });
        sampled("block", [](double x) { return (x > 0.25 && x < 0.5) ? 1.0 : 0.0; });
        std::vector<double> prof(n);
        for (int i = 0; i < n; ++i) prof[i] = std::pow(w.values[i], 1.0 - pc);
        family.emplace_back("dual_profile", Sample(space, std::move(prof)));
    } else {
        const std::vector<Ball> balls = enumerate_balls(*space);
        const size_t stride = std::max<size_t>(1, balls.size() / 6);
        for (size_t bi = 0; bi < balls.size(); bi += stride) {
            std::vector<double> ind(n, 0.0);
            for (int i : balls[bi].members) ind[i] = 1.0;
            family.emplace_back("ball_" + std::to_string(bi), Sample(space, std::move(ind)));
        }
        std::vector<double> prof(n);
        for (int i = 0; i < n; ++i) prof[i] = std::pow(w.values[i], 1.0 - pc);
        family.emplace_back("dual_profile", Sample(space, std::move(prof)));
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int r = 0; r < 2; ++r) {
            std::vector<double> v(n);
            for (double& x : v) x = std::exp(gauss(rng));
            family.emplace_back("lognormal_" + std::to_string(r), Sample(space, std::move(v)));
        }
    }
    return family;
}

BoundednessResult check_boundedness(const PointOperator& T, const NormFn& src, const NormFn& tgt,
                                    const std::vector<std::pair<std::string, Sample>>& family,
                                    double class_index, const Weight& w, double weight_exponent,
                                    bool allow_violation) {
    BoundednessResult out;
    out.class_ok = power_weight_admissible(weight_exponent, class_index);
    if (!out.class_ok && !allow_violation) {
        throw ClassViolation("power exponent " + std::to_string(weight_exponent) +
                             " leaves the admissible range of A_" + std::to_string(class_index));
    }
    out.characteristic = ap_characteristic(w, class_index).value;
    for (const auto& [name, f] : family) {
        const double denom = src(f);
        if (!(denom > 0.0)) continue;
        const double r = tgt(T.apply(f)) / denom;
        if (r > out.max_ratio) {
            out.max_ratio = r;
            out.witness = name;
        }
    }
    return out;
}

LemmaBallCheck lemma_ball_check(const Weight& w, double p, double s, double theta) {
    const Space& X = *w.space;
    const SpacePtr sp = w.space;
    const double pc = conjugate(p);
    LemmaBallCheck out;
    const std::vector<Ball> balls = enumerate_balls(X);
    for (const Ball& b : balls) {
        const double wb = weighted_measure(b.members, w);
        const double chi_norm = indicator_grand_norm(wb, p, theta);
        // profiles supported on the ball: the indicator, the dual profile,
        // and a linear-in-index ramp
        for (int variant = 0; variant < 3; ++variant) {
            std::vector<double> v(X.size(), 0.0);
            int k = 0;
            for (int i : b.members) {
                v[i] = variant == 0 ? 1.0
                       : variant == 1 ? std::pow(w.values[i], 1.0 - pc)
                                      : 1.0 + static_cast<double>(k);
                ++k;
            }
            Sample f(sp, std::move(v));
            const double lhs = grand_lorentz_norm(f, w, p, s, theta).value;
            const double rhs =
                std::pow(wb, -1.0 / p) * lebesgue_norm(f, w, p) * chi_norm;
            if (!(rhs > 0.0)) continue;
            const double ratio = lhs / rhs;
            if (ratio > out.max_ratio) {
                out.max_ratio = ratio;
                out.witness = b;
            }
            out.min_ratio = std::min(out.min_ratio, ratio);
        }
    }
    return out;
}

NecessityExtraction necessity_maximal(const Weight& w, double p, double s, double theta,
                                      double m_bound) {
    const Space& X = *w.space;
    const SpacePtr sp = w.space;
    const double pc = conjugate(p);
    NecessityExtraction out;
    const std::vector<Ball> balls = enumerate_balls(X);
    const size_t chain_stride = std::max<size_t>(1, balls.size() / 48);
    double lemma_c = 0.0;
    for (size_t bi = 0; bi < balls.size(); ++bi) {
        const Ball& b = balls[bi];
        double wb = 0.0, sigma = 0.0;
        for (int i : b.members) {
            wb += w.values[i] * X.mass(i);
            sigma += std::pow(w.values[i], 1.0 - pc) * X.mass(i);
        }
        const double product = (wb / b.measure) * std::pow(sigma / b.measure, p - 1.0);
        if (product > out.extracted) {
            out.extracted = product;
            out.witness = b;
        }
        if (bi % chain_stride == 0) {
            // proof profile f = chi_B w^{1-p'}
            std::vector<double> v(X.size(), 0.0);
            for (int i : b.members) v[i] = std::pow(w.values[i], 1.0 - pc);
            Sample f(sp, std::move(v));
            const double avg = sigma / b.measure;
            const double chi_norm = indicator_grand_norm(wb, p, theta);
            const double mid = grand_lorentz_norm(maximal(f), w, p, s, theta).value;
            if (avg * chi_norm > mid * (1.0 + 1e-9)) out.chain_ok = false;
            const double lemma_rhs =
                std::pow(wb, -1.0 / p) * lebesgue_norm(f, w, p) * chi_norm;
            if (lemma_rhs > 0.0) {
                lemma_c = std::max(lemma_c, grand_lorentz_norm(f, w, p, s, theta).value / lemma_rhs);
            }
        }
    }
    out.extracted_root = std::pow(out.extracted, 1.0 / p);
    out.lemma_constant = lemma_c;
    out.cap = m_bound * lemma_c;
    return out;
}

HilbertNecessity necessity_hilbert(const Weight& w, double p, double s, double theta,
                                   double h_bound) {
    const SpacePtr sp = w.space;
    const Space& X = *sp;
    if (!X.is_interval_grid()) throw NotAGrid("hilbert necessity needs an interval grid");
    const int n = X.size();
    if (n < 8) throw GridTooCoarse("need at least 8 cells");
    HilbertNecessity out;
    auto w_of_range = [&](int lo, int hi) {  // cells [lo, hi)
        double acc = 0.0;
        for (int i = lo; i < hi; ++i) acc += w.values[i] * X.mass(i);
        return acc;
    };
    double worst_half = kInfinity;
    for (int len = 2; len <= n / 4; len *= 2) {
        for (int start = 0; start + len <= n; start += len) {
            const bool right_fits = start + 2 * len <= n;
            const int jlo = start, jhi = start + len;
            const int klo = right_fits ? start + len : start - len;
            const int khi = right_fits ? start + 2 * len : start;
            if (klo < 0) continue;
            const double nj = indicator_grand_norm(w_of_range(jlo, jhi), p, theta);
            const double nk = indicator_grand_norm(w_of_range(klo, khi), p, theta);
            if (nk > 0.0) {
                out.max_indicator_ratio = std::max(out.max_indicator_ratio, nj / nk);
            }
            // the proof's pointwise 1/2 factor, checked on a subsample
            if (start == 0 || start + len == n / 2 || start + 2 * len == n) {
                std::vector<double> chik(n, 0.0);
                for (int i = klo; i < khi; ++i) chik[i] = 1.0;
                Sample hf = hilbert_transform(Sample(sp, std::move(chik)));
                std::vector<double> hj(n, 0.0);
                for (int i = jlo; i < jhi; ++i) hj[i] = hf.values[i];
                const double lhs = iwaniec_sbordone_norm(Sample(sp, std::move(hj)), w, p, theta).value;
                if (nj > 0.0) worst_half = std::min(worst_half, lhs / nj);
            }
        }
    }
    out.half_factor = worst_half;
    out.cap = 2.0 * h_bound;
    out.extraction = necessity_maximal(w, p, s, theta, 2.0 * h_bound);
    return out;
}

FractionalNecessity necessity_fractional(const Weight& w, double p, double s, double q, double r,
                                         double alpha, double theta, double bound) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must be in (0,1)");
    if (std::abs(q - p / (1.0 - alpha * p)) > 1e-9 * q ||
        std::abs(r - s / (1.0 - alpha * s)) > 1e-9 * r) {
        throw ScalingMismatch("need q = p/(1 - alpha p) and r = s/(1 - alpha s)");
    }
    const Space& X = *w.space;
    const double pc = conjugate(p);
    FractionalNecessity out;
    for (const Ball& b : enumerate_balls(X)) {
        double wb = 0.0, neg = 0.0;
        for (int i : b.members) {
            wb += w.values[i] * X.mass(i);
            neg += std::pow(w.values[i], -pc / q) * X.mass(i);
        }
        const double closing = std::pow(b.measure, alpha - 1.0) * std::pow(wb, 1.0 / q) *
                               std::pow(neg, 1.0 / pc);
        if (closing > out.closing_max) {
            out.closing_max = closing;
            out.witness = b;
        }
        // ball-indexed eta/eps pair of the proof
        const double eta = indicator_grand_witness(wb, p, theta);
        const double eps = q - 1.0 / (1.0 / (p - eta) - alpha);
        out.pairing_residual = std::max(
            out.pairing_residual, std::abs(1.0 / (p - eta) - 1.0 / (q - eps) - alpha));
    }
    // psi(t) ~ t^{theta (1 + alpha q)} for small t
    double lo = kInfinity, hi = 0.0;
    for (double t : geometric_grid(1e-2, 24, 1e-6)) {
        const double psi = phi_psi_frac(t, p, q, theta, alpha).psi;
        const double ratio = psi / std::pow(t, theta * (1.0 + alpha * q));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    out.psi_ratio_spread = hi / lo;
    (void)bound;
    return out;
}

EquivalenceLegs equivalence_suite_frac(const Weight& w, double p, double s, double theta,
                                       double alpha, unsigned long long seed) {
    if (!(alpha * p < 1.0) || !(alpha * s < 1.0)) {
        throw ScalingMismatch("need p, s < 1/alpha");
    }
    const double q = p / (1.0 - alpha * p);
    const double r = s / (1.0 - alpha * s);
    const SpacePtr sp = w.space;
    EquivalenceLegs out;
    auto family = test_family(sp, w, p, seed);
    // nonnegative versions; the pointwise comparison needs f >= 0
    for (auto& [name, f] : family) {
        for (double& v : f.values) v = std::abs(v);
    }
    const double theta_tgt = q * theta / p;
    for (const auto& [name, f] : family) {
        std::vector<double> g(f.values);
        for (int i = 0; i < f.size(); ++i) g[i] *= std::pow(w.values[i], alpha);
        Sample wf(sp, std::move(g));
        const double denom = grand_lorentz_norm(f, w, p, s, theta).value;
        if (!(denom > 0.0)) continue;
        const Sample ia = fractional_integral(wf, alpha);
        const Sample ma = fractional_maximal(wf, alpha);
        out.ratio_i =
            std::max(out.ratio_i, grand_lorentz_norm(ia, w, q, r, theta_tgt).value / denom);
        out.ratio_ii =
            std::max(out.ratio_ii, grand_lorentz_norm(ma, w, q, r, theta_tgt).value / denom);
        for (int i = 0; i < f.size(); ++i) {
            if (ia.values[i] > 0.0) {
                out.c_alpha = std::max(out.c_alpha, ma.values[i] / ia.values[i]);
            }
        }
    }
    out.necessity = necessity_fractional(w, p, s, q, r, alpha, theta, out.ratio_ii);
    return out;
}

double spearman(const std::vector<double>& xs) {
    const size_t n = xs.size();
    if (n < 2) return 1.0;
    std::vector<size_t> rank(n);
    std::iota(rank.begin(), rank.end(), size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    double d2 = 0.0;
    for (size_t pos = 0; pos < n; ++pos) {
        const double d = static_cast<double>(rank[pos]) - static_cast<double>(pos);
        d2 += d * d;
    }
    return 1.0 - 6.0 * d2 / (static_cast<double>(n) * (static_cast<double>(n) * n - 1.0));
}

namespace {

struct ScenarioOps {
    PointOperator op;
    NormFn src;
    NormFn tgt;
    double class_index;
};

ScenarioOps scenario_ops(const ScenarioConfig& cfg, const SpacePtr& sp, const Weight& w) {
    ScenarioOps ops;
    const double p = cfg.p, s = cfg.s, theta = cfg.theta;
    auto grand = [&w, p, s, theta](const Sample& f) {
        return grand_lorentz_norm(f, w, p, s, theta).value;
    };
    ops.src = grand;
    ops.tgt = grand;
    ops.class_index = p;
    if (cfg.theorem == "thm5.1" || cfg.theorem == "thm6.1") {
        ops.op = make_maximal_op(1);
    } else if (cfg.theorem == "thm6.2") {
        ops.op = make_hilbert_op(*sp);
    } else if (cfg.theorem == "thm6.4") {
        std::vector<double> b(sp->size());
        for (int i = 0; i < sp->size(); ++i) b[i] = std::log(sp->coordinate(i));
        ops.op = make_cz_commutator_op(*sp, Sample(sp, std::move(b)), cfg.m);
        const int m = cfg.m;
        ops.src = [&w, p, s, theta, m](const Sample& f) {
            return grand_lorentz_norm(iterated_maximal(f, m + 1), w, p, s, theta).value;
        };
    } else if (cfg.theorem == "thm6.5" || cfg.theorem == "cor6.1") {
        std::vector<double> b(sp->size());
        for (int i = 0; i < sp->size(); ++i) b[i] = std::log(sp->coordinate(i));
        ops.op = make_fractional_commutator_op(*sp, Sample(sp, std::move(b)), cfg.m, cfg.alpha,
                                               false);
        if (cfg.theorem == "thm6.5") {
            const int m = cfg.m;
            const double alpha = cfg.alpha;
            ops.src = [&w, p, s, theta, m, alpha](const Sample& f) {
                return grand_lorentz_norm(fractional_maximal(iterated_maximal(f, m), alpha), w, p,
                                          s, theta)
                    .value;
            };
        }
    } else {
        throw InputError("unknown theorem scenario: " + cfg.theorem);
    }
    return ops;
}

}  // namespace

Report run_scenario(const ScenarioConfig& cfg) {
    Report rep;
    rep.theorem = cfg.theorem;
    rep.payload["config"] = scenario_to_json(cfg);
    SpacePtr sp = space_from_json(cfg.space);

    auto weight_for = [&](const SpacePtr& space, double a) {
        if (cfg.weight_kind == "const") return Weight::uniform(space);
        if (cfg.weight_kind == "power") return Weight::power(space, a);
        throw InputError("unknown weight family kind: " + cfg.weight_kind);
    };

    bool pass = true;
    json weights = json::array();
    std::vector<double> extraction_series;

    if (cfg.theorem == "lemma6.1") {
        for (double a : cfg.weight_exponents) {
            const Weight w = weight_for(sp, a);
            const LemmaBallCheck chk = lemma_ball_check(w, cfg.p, cfg.s, cfg.theta);
            json entry;
            entry["exponent"] = a;
            entry["max_ratio"] = chk.max_ratio;
            entry["min_ratio"] = chk.min_ratio;
            pass = pass && std::isfinite(chk.max_ratio) && chk.max_ratio <= cfg.slack;
            if (cfg.grid_refine && sp->is_interval_grid()) {
                SpacePtr sp2 = interval_grid(2 * sp->interval_n());
                const LemmaBallCheck chk2 = lemma_ball_check(weight_for(sp2, a), cfg.p, cfg.s, cfg.theta);
                entry["max_ratio_refined"] = chk2.max_ratio;
                const double drift = std::abs(chk2.max_ratio / chk.max_ratio - 1.0);
                entry["stability"] = drift;
                pass = pass && drift <= 2.0 * cfg.stability_tol;
            }
            weights.push_back(entry);
        }
        rep.payload["weights"] = weights;
        rep.pass = pass;
        return rep;
    }

    if (cfg.theorem == "thm6.3") {
        for (double a : cfg.weight_exponents) {
            const double q = cfg.p / (1.0 - cfg.alpha * cfg.p);
            const double class_index = 1.0 + cfg.p / conjugate(q);
            const bool ok = power_weight_admissible(cfg.weight_kind == "const" ? 0.0 : a, class_index);
            if (!ok && !cfg.allow_class_violation) {
                throw ClassViolation("exponent " + std::to_string(a) + " outside A_" +
                                     std::to_string(class_index));
            }
            const Weight w = weight_for(sp, a);
            const EquivalenceLegs legs =
                equivalence_suite_frac(w, cfg.p, cfg.s, cfg.theta, cfg.alpha, cfg.seed);
            json entry;
            entry["exponent"] = a;
            entry["class_ok"] = ok;
            entry["ratio_i"] = legs.ratio_i;
            entry["ratio_ii"] = legs.ratio_ii;
            entry["c_alpha"] = legs.c_alpha;
            entry["closing_max"] = legs.necessity.closing_max;
            entry["psi_ratio_spread"] = legs.necessity.psi_ratio_spread;
            entry["pairing_residual"] = legs.necessity.pairing_residual;
            entry["flagged"] = !ok;
            extraction_series.push_back(legs.necessity.closing_max);
            pass = pass && std::isfinite(legs.ratio_i) && std::isfinite(legs.ratio_ii) &&
                   legs.necessity.pairing_residual < 1e-9;
            if (cfg.grid_refine && sp->is_interval_grid()) {
                SpacePtr sp2 = interval_grid(2 * sp->interval_n());
                const EquivalenceLegs legs2 = equivalence_suite_frac(
                    weight_for(sp2, a), cfg.p, cfg.s, cfg.theta, cfg.alpha, cfg.seed);
                const double drift = std::abs(legs2.ratio_i / legs.ratio_i - 1.0);
                entry["ratio_i_refined"] = legs2.ratio_i;
                entry["stability"] = drift;
                pass = pass && drift <= cfg.stability_tol;
            }
            weights.push_back(entry);
        }
        rep.payload["weights"] = weights;
        if (extraction_series.size() >= 4) {
            const double rho = spearman(extraction_series);
            rep.payload["necessity_spearman"] = rho;
            pass = pass && rho == 1.0;
        }
        rep.pass = pass;
        rep.footnotes.push_back(
            "closing product evaluated per ball with the profile chi_B w^{-alpha-p'/q}");
        return rep;
    }

    // operator-vs-majorant scenarios
    for (double a : cfg.weight_exponents) {
        const Weight w = weight_for(sp, a);
        const ScenarioOps ops = scenario_ops(cfg, sp, w);
        auto family = test_family(sp, w, cfg.p, cfg.seed);
        const BoundednessResult res =
            check_boundedness(ops.op, ops.src, ops.tgt, family, ops.class_index, w,
                              cfg.weight_kind == "const" ? 0.0 : a, cfg.allow_class_violation);
        json entry;
        entry["exponent"] = a;
        entry["characteristic"] = res.characteristic;
        entry["ratio"] = res.max_ratio;
        entry["witness"] = res.witness;
        entry["class_ok"] = res.class_ok;
        pass = pass && std::isfinite(res.max_ratio);

        if (cfg.theorem == "thm5.1") {
            // reference bound from the interpolation estimate
            const StructuralConstants sc = structural_constants(*sp, CbarMode::Auto);
            const MaximalBound mb = maximal_lorentz_bound(w, cfg.p, sc.tau);
            entry["interpolation_bound"] = mb.value;
            pass = pass && res.max_ratio <= mb.value * cfg.slack;
        }
        if (cfg.theorem == "thm6.1") {
            const NecessityExtraction ne =
                necessity_maximal(w, cfg.p, cfg.s, cfg.theta, res.max_ratio);
            entry["extracted"] = ne.extracted;
            entry["extracted_root"] = ne.extracted_root;
            entry["cap"] = ne.cap;
            entry["chain_ok"] = ne.chain_ok;
            extraction_series.push_back(ne.extracted);
            pass = pass && ne.chain_ok && ne.extracted_root <= ne.cap * cfg.slack;
        }
        if (cfg.theorem == "thm6.2") {
            const HilbertNecessity hn =
                necessity_hilbert(w, cfg.p, cfg.s, cfg.theta, res.max_ratio);
            entry["indicator_ratio"] = hn.max_indicator_ratio;
            entry["indicator_cap"] = hn.cap;
            entry["half_factor"] = hn.half_factor;
            entry["extracted"] = hn.extraction.extracted;
            extraction_series.push_back(hn.extraction.extracted);
            pass = pass && hn.max_indicator_ratio <= hn.cap * cfg.slack &&
                   hn.half_factor >= 0.45;
        }

        if (cfg.grid_refine && sp->is_interval_grid()) {
            SpacePtr sp2 = interval_grid(2 * sp->interval_n());
            const Weight w2 = weight_for(sp2, a);
            const ScenarioOps ops2 = scenario_ops(cfg, sp2, w2);
            auto family2 = test_family(sp2, w2, cfg.p, cfg.seed);
            const BoundednessResult res2 =
                check_boundedness(ops2.op, ops2.src, ops2.tgt, family2, ops2.class_index, w2,
                                  cfg.weight_kind == "const" ? 0.0 : a, cfg.allow_class_violation);
            entry["ratio_refined"] = res2.max_ratio;
            const double drift = std::abs(res2.max_ratio / res.max_ratio - 1.0);
            entry["stability"] = drift;
            pass = pass && drift <= cfg.stability_tol;
        }
        weights.push_back(entry);
    }
    rep.payload["weights"] = weights;
    if (extraction_series.size() >= 4) {
        const double rho = spearman(extraction_series);
        rep.payload["necessity_spearman"] = rho;
        pass = pass && rho == 1.0;
    }
    if (cfg.theorem == "thm6.1" || cfg.theorem == "thm6.2") {
        rep.footnotes.push_back(
            "necessity display read as the ball average of f times the indicator norm");
    }
    rep.pass = pass;
    return rep;
}

}  // namespace lorext
