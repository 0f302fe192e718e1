#include "lorext/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lorext/lorentz.hpp"
#include "lorext/parallel.hpp"

namespace lorext {

Sample maximal(const Sample& f) {
    const Space& X = *f.space;
    const int n = X.size();
    std::vector<double> out(n, 0.0);
    for_each_ball(X, [&](int, double, std::span<const int> members) {
        double sum = 0.0;
        double meas = 0.0;
        for (int i : members) {
            sum += std::abs(f.values[i]) * X.mass(i);
            meas += X.mass(i);
        }
        const double avg = sum / meas;
        for (int i : members) out[i] = std::max(out[i], avg);
    });
    return Sample(f.space, std::move(out));
}

Sample iterated_maximal(const Sample& f, int m) {
    if (m < 0) throw InputError("iteration count must be >= 0");
    std::vector<double> v(f.values);
    for (double& x : v) x = std::abs(x);
    Sample cur(f.space, std::move(v));
    for (int k = 0; k < m; ++k) cur = maximal(cur);
    return cur;
}

Sample fractional_maximal(const Sample& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must be in (0,1)");
    const Space& X = *f.space;
    std::vector<double> out(X.size(), 0.0);
    for_each_ball(X, [&](int, double, std::span<const int> members) {
        double sum = 0.0;
        double meas = 0.0;
        for (int i : members) {
            sum += std::abs(f.values[i]) * X.mass(i);
            meas += X.mass(i);
        }
        const double v = std::pow(meas, alpha - 1.0) * sum;
        for (int i : members) out[i] = std::max(out[i], v);
    });
    return Sample(f.space, std::move(out));
}

namespace {

// mu(B(x, d(x,y))) for all y as one pass per x: sort by distance, members of
// B(x, d) with strict inequality are the points strictly closer than d.
std::vector<double> kernel_row_measures(const Space& X, int x) {
    const int n = X.size();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return X.dist(x, a) < X.dist(x, b); });
    std::vector<double> meas(n, 0.0);
    double cum = 0.0;
    size_t j = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        const double d = X.dist(x, order[i]);
        // points strictly closer than d; ties at d stay excluded
        while (j < i && X.dist(x, order[j]) < d) {
            cum += X.mass(order[j]);
            ++j;
        }
        meas[order[i]] = cum;
    }
    return meas;
}

}  // namespace

Sample fractional_integral(const Sample& f, double alpha, bool printed_diagonal) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must be in (0,1)");
    const Space& X = *f.space;
    const int n = X.size();
    std::vector<double> out(n, 0.0);
    for (int x = 0; x < n; ++x) {
        const std::vector<double> meas = kernel_row_measures(X, x);
        double acc = 0.0;
        for (int y = 0; y < n; ++y) {
            double k;
            if (y == x) {
                k = printed_diagonal ? X.mass(x) : std::pow(X.mass(x), alpha - 1.0);
            } else {
                k = std::pow(meas[y], alpha - 1.0);
            }
            acc += k * f.values[y] * X.mass(y);
        }
        out[x] = acc;
    }
    return Sample(f.space, std::move(out));
}

Sample hilbert_transform(const Sample& f) {
    const Space& X = *f.space;
    if (!X.is_interval_grid()) throw NotAGrid("hilbert transform needs an interval grid");
    const int n = X.size();
    const double h = 1.0 / n;
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double xi = X.coordinate(i);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;  // symmetric p.v. exclusion of the singular cell
            acc += f.values[j] / (xi - X.coordinate(j));
        }
        out[i] = acc * h;
    }
    return Sample(f.space, std::move(out));
}

double bmo_norm(const Sample& b) {
    const Space& X = *b.space;
    double best = 0.0;
    for_each_ball(X, [&](int, double, std::span<const int> members) {
        double meas = 0.0, sum = 0.0;
        for (int i : members) {
            meas += X.mass(i);
            sum += b.values[i] * X.mass(i);
        }
        const double mean = sum / meas;
        double osc = 0.0;
        for (int i : members) osc += std::abs(b.values[i] - mean) * X.mass(i);
        best = std::max(best, osc / meas);
    });
    return best;
}

Sample cz_commutator(const Sample& f, const Sample& b, int m) {
    const Space& X = *f.space;
    if (!X.is_interval_grid()) throw NotAGrid("the concrete CZ kernel is the Hilbert kernel");
    if (m < 0) throw InputError("commutator order must be >= 0");
    if (f.space != b.space) throw InputError("f and b live on different spaces");
    const int n = X.size();
    const double h = 1.0 / n;
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double xi = X.coordinate(i);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double db = b.values[i] - b.values[j];
            acc += std::pow(db, m) * f.values[j] / (xi - X.coordinate(j));
        }
        out[i] = acc * h;
    }
    return Sample(f.space, std::move(out));
}

Sample fractional_commutator(const Sample& f, const Sample& b, int m, double alpha,
                             bool signed_kernel, bool printed_diagonal) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must be in (0,1)");
    if (m < 0) throw InputError("commutator order must be >= 0");
    if (f.space != b.space) throw InputError("f and b live on different spaces");
    const Space& X = *f.space;
    const int n = X.size();
    std::vector<double> out(n, 0.0);
    for (int x = 0; x < n; ++x) {
        const std::vector<double> meas = kernel_row_measures(X, x);
        double acc = 0.0;
        for (int y = 0; y < n; ++y) {
            double k;
            if (y == x) {
                k = printed_diagonal ? X.mass(x) : std::pow(X.mass(x), alpha - 1.0);
            } else {
                k = std::pow(meas[y], alpha - 1.0);
            }
            const double db = b.values[x] - b.values[y];
            const double factor =
                signed_kernel ? std::pow(db, m) : std::pow(std::abs(db), m);
            acc += factor * k * f.values[y] * X.mass(y);
        }
        out[x] = acc;
    }
    return Sample(f.space, std::move(out));
}

PointOperator make_identity_op() {
    return {"identity", [](const Sample& f) { return f; }, 1.0};
}

PointOperator make_maximal_op(int iterations) {
    std::string name = iterations == 1 ? "maximal" : "maximal^" + std::to_string(iterations);
    return {std::move(name),
            [iterations](const Sample& f) { return iterated_maximal(f, iterations); }, 1.0};
}

PointOperator make_fractional_maximal_op(const Space& space, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must be in (0,1)");
    return {"frac_maximal", [alpha](const Sample& f) { return fractional_maximal(f, alpha); },
            std::pow(space.total_mass(), alpha)};
}

namespace {

double kernel_row_sum_frac(const Space& X, double alpha) {
    double best = 0.0;
    for (int x = 0; x < X.size(); ++x) {
        const std::vector<double> meas = kernel_row_measures(X, x);
        double acc = std::pow(X.mass(x), alpha - 1.0) * X.mass(x);
        for (int y = 0; y < X.size(); ++y) {
            if (y != x) acc += std::pow(meas[y], alpha - 1.0) * X.mass(y);
        }
        best = std::max(best, acc);
    }
    return best;
}

double kernel_row_sum_hilbert(const Space& X) {
    double best = 0.0;
    for (int i = 0; i < X.size(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < X.size(); ++j) {
            if (j != i) acc += 1.0 / std::abs(X.coordinate(i) - X.coordinate(j));
        }
        best = std::max(best, acc / X.size());
    }
    return best;
}

}  // namespace

PointOperator make_fractional_integral_op(const Space& space, double alpha) {
    return {"frac_integral", [alpha](const Sample& f) { return fractional_integral(f, alpha); },
            kernel_row_sum_frac(space, alpha)};
}

PointOperator make_hilbert_op(const Space& space) {
    return {"hilbert", [](const Sample& f) { return hilbert_transform(f); },
            kernel_row_sum_hilbert(space)};
}

PointOperator make_cz_commutator_op(const Space& space, Sample b, int m) {
    double bosc = 0.0;
    for (int i = 0; i < space.size(); ++i) {
        for (int j = 0; j < space.size(); ++j) {
            bosc = std::max(bosc, std::abs(b.values[i] - b.values[j]));
        }
    }
    const double gain = std::pow(bosc, m) * kernel_row_sum_hilbert(space);
    return {"commutator_cz^" + std::to_string(m),
            [b = std::move(b), m](const Sample& f) { return cz_commutator(f, b, m); }, gain};
}

PointOperator make_fractional_commutator_op(const Space& space, Sample b, int m, double alpha,
                                            bool signed_kernel) {
    double bosc = 0.0;
    for (int i = 0; i < space.size(); ++i) {
        for (int j = 0; j < space.size(); ++j) {
            bosc = std::max(bosc, std::abs(b.values[i] - b.values[j]));
        }
    }
    const double gain = std::pow(bosc, m) * kernel_row_sum_frac(space, alpha);
    return {std::string(signed_kernel ? "commutator_frac_signed^" : "commutator_frac^") +
                std::to_string(m),
            [b = std::move(b), m, alpha, signed_kernel](const Sample& f) {
                return fractional_commutator(f, b, m, alpha, signed_kernel);
            },
            gain};
}

PointOperator make_operator(const std::string& name, SpacePtr space, double alpha, int m,
                            const Sample* b) {
    if (name == "identity") return make_identity_op();
    if (name == "maximal") return make_maximal_op(1);
    if (name.rfind("maximal^", 0) == 0) {
        return make_maximal_op(std::stoi(name.substr(8)));
    }
    if (name == "frac_maximal") return make_fractional_maximal_op(*space, alpha);
    if (name == "frac_integral") return make_fractional_integral_op(*space, alpha);
    if (name == "hilbert") return make_hilbert_op(*space);
    if (name == "commutator_cz") {
        if (!b) throw InputError("commutator_cz needs a symbol b");
        return make_cz_commutator_op(*space, *b, m);
    }
    if (name == "commutator_frac") {
        if (!b) throw InputError("commutator_frac needs a symbol b");
        return make_fractional_commutator_op(*space, *b, m, alpha, false);
    }
    throw InputError("unknown operator: " + name);
}

OperatorNormEstimate estimate_operator_norm(const PointOperator& op, const NormFn& source_norm,
                                            const NormFn& target_norm, const Weight& w, double p,
                                            int budget, unsigned long long seed, int threads) {
    if (budget < 1) throw BudgetZero("search budget must be >= 1");
    const SpacePtr space = w.space;
    const int n = space->size();

    // Rigorous crude upper bound via sup-norm amplification:
    // ||Tf||_tgt <= sup_gain ||f||_inf ||chi_X||_tgt and
    // ||f||_src >= ||f||_inf min_x ||chi_{x}||_src.
    OperatorNormEstimate est;
    {
        Sample chi_all(space, std::vector<double>(n, 1.0));
        const double c1 = target_norm(chi_all);
        double c2 = kInfinity;
        for (int i = 0; i < n; ++i) {
            std::vector<double> e(n, 0.0);
            e[i] = 1.0;
            c2 = std::min(c2, source_norm(Sample(space, std::move(e))));
        }
        est.upper = op.sup_gain * c1 / c2;
    }

    // Candidate family.
    std::vector<std::vector<double>> candidates;
    const std::vector<Ball> balls = enumerate_balls(*space);
    const double pc = conjugate(p);
    size_t ball_stride = std::max<size_t>(1, balls.size() / std::max(1, budget / 4));
    for (size_t bi = 0; bi < balls.size(); bi += ball_stride) {
        std::vector<double> ind(n, 0.0);
        for (int i : balls[bi].members) ind[i] = 1.0;
        if (p > 1.0) {
            std::vector<double> prof(n, 0.0);
            for (int i : balls[bi].members) prof[i] = std::pow(w.values[i], 1.0 - pc);
            candidates.push_back(std::move(prof));
        }
        candidates.push_back(std::move(ind));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 1);
    const int n_random = std::max(4, budget / 8);
    for (int r = 0; r < n_random; ++r) {
        std::vector<double> lognorm(n), rade(n);
        for (int i = 0; i < n; ++i) {
            lognorm[i] = std::exp(gauss(rng));
            rade[i] = coin(rng) ? 1.0 : -1.0;
        }
        candidates.push_back(std::move(lognorm));
        candidates.push_back(std::move(rade));
    }
    if (candidates.size() > static_cast<size_t>(budget)) candidates.resize(budget);

    std::vector<double> ratios(candidates.size(), 0.0);
    parallel_for(
        static_cast<int>(candidates.size()),
        [&](int ci) {
            Sample f(space, candidates[ci]);
            const double denom = source_norm(f);
            if (!(denom > 0.0)) return;
            ratios[ci] = target_norm(op.apply(f)) / denom;
        },
        threads);
    est.evaluations = static_cast<int>(candidates.size());
    size_t best_idx = 0;
    for (size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i] > ratios[best_idx]) best_idx = i;
    }
    est.lower = ratios[best_idx];
    est.witness = candidates[best_idx];

    // Coordinate ascent around the best candidate (deterministic order).
    int remaining = budget - est.evaluations;
    std::vector<double> cur = est.witness;
    while (remaining > 0) {
        bool improved = false;
        for (int i = 0; i < n && remaining > 0; ++i) {
            for (double factor : {2.0, 0.5}) {
                if (remaining <= 0) break;
                std::vector<double> trial = cur;
                trial[i] = trial[i] == 0.0 ? (factor > 1.0 ? 1.0 : 0.0) : trial[i] * factor;
                Sample f(space, trial);
                const double denom = source_norm(f);
                --remaining;
                if (!(denom > 0.0)) continue;
                const double r = target_norm(Sample(op.apply(f))) / denom;
                ++est.evaluations;
                if (r > est.lower * (1.0 + 1e-12)) {
                    est.lower = r;
                    est.witness = trial;
                    cur = std::move(trial);
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return est;
}

}  // namespace lorext
