#include "lorext/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace lorext {

namespace {

void check_matrix(const std::vector<double>& dist, int n) {
    for (int i = 0; i < n; ++i) {
        if (dist[static_cast<size_t>(i) * n + i] != 0.0) {
            throw ZeroOffDiagonal("nonzero diagonal entry at point " + std::to_string(i));
        }
        for (int j = i + 1; j < n; ++j) {
            const double dij = dist[static_cast<size_t>(i) * n + j];
            const double dji = dist[static_cast<size_t>(j) * n + i];
            if (dij != dji) {
                std::ostringstream os;
                os << "dist(" << i << "," << j << ") = " << dij << " != dist(" << j << "," << i
                   << ") = " << dji;
                throw AsymmetricDistance(os.str());
            }
            if (!(dij > 0.0) || !std::isfinite(dij)) {
                throw ZeroOffDiagonal("distinct points " + std::to_string(i) + "," +
                                      std::to_string(j) + " at non-positive distance");
            }
        }
    }
}

}  // namespace

Space::Space(std::vector<double> dist, std::vector<double> mass, std::optional<double> kappa,
             std::vector<std::string> labels)
    : dist_(std::move(dist)), mass_(std::move(mass)), labels_(std::move(labels)) {
    n_ = static_cast<int>(mass_.size());
    if (n_ < 1) throw InputError("space needs at least one point");
    if (dist_.size() != static_cast<size_t>(n_) * n_) {
        throw InputError("dist matrix size does not match point count");
    }
    check_matrix(dist_, n_);
    for (double m : mass_) {
        if (!(m > 0.0) || !std::isfinite(m)) throw InputError("masses must be positive and finite");
    }
    total_mass_ = std::accumulate(mass_.begin(), mass_.end(), 0.0);
    diameter_ = 0.0;
    for (double d : dist_) diameter_ = std::max(diameter_, d);
    if (labels_.empty()) {
        labels_.reserve(n_);
        for (int i = 0; i < n_; ++i) labels_.push_back("x" + std::to_string(i));
    } else if (labels_.size() != static_cast<size_t>(n_)) {
        throw InputError("label count does not match point count");
    }
    if (kappa) {
        if (!(*kappa >= 1.0)) throw InputError("kappa must be >= 1");
        kappa_ = *kappa;
    } else {
        kappa_ = validate_quasi_metric(*this);
    }
}

SpacePtr Space::make(std::vector<double> dist, std::vector<double> mass,
                     std::optional<double> kappa, std::vector<std::string> labels) {
    return std::make_shared<const Space>(std::move(dist), std::move(mass), kappa,
                                         std::move(labels));
}

double Space::coordinate(int i) const {
    if (!is_interval_grid()) throw NotAGrid("coordinate() requires an interval grid");
    return (i + 0.5) / interval_n_;
}

double validate_quasi_metric(const Space& space) {
    const int n = space.size();
    check_matrix(space.dist_matrix(), n);
    double kappa = 1.0;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            const double dxy = space.dist(x, y);
            for (int z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                const double denom = space.dist(x, z) + space.dist(z, y);
                kappa = std::max(kappa, dxy / denom);
            }
        }
    }
    return kappa;
}

SpacePtr interval_grid(int n) {
    if (n < 1) throw InputError("interval_grid needs n >= 1");
    std::vector<double> dist(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            dist[static_cast<size_t>(i) * n + j] = std::abs(i - j) / static_cast<double>(n);
        }
    }
    std::vector<double> mass(n, 1.0 / n);
    auto sp = std::make_shared<Space>(std::move(dist), std::move(mass), 1.0);
    sp->interval_n_ = n;
    return sp;
}

void for_each_ball(const Space& space,
                   const std::function<void(int, double, std::span<const int>)>& fn) {
    const int n = space.size();
    // Canonical radii: distinct positive entries of the distance matrix plus
    // one radius beyond the diameter.
    std::vector<double> radii;
    radii.reserve(static_cast<size_t>(n) * (n - 1) / 2 + 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) radii.push_back(space.dist(i, j));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    radii.push_back(space.diameter() == 0.0 ? 1.0 : space.diameter() * 1.125);

    std::vector<int> order(n);
    std::vector<int> members;
    members.reserve(n);
    for (int x = 0; x < n; ++x) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return space.dist(x, a) < space.dist(x, b);
        });
        size_t prev_count = 0;
        for (double r : radii) {
            size_t count = prev_count;
            while (count < static_cast<size_t>(n) && space.dist(x, order[count]) < r) ++count;
            if (count == prev_count && count > 0) continue;  // same member set as before
            if (count == 0) continue;                        // empty: r below every distance
            members.assign(order.begin(), order.begin() + count);
            std::sort(members.begin(), members.end());
            fn(x, r, std::span<const int>(members));
            prev_count = count;
        }
    }
}

std::vector<Ball> enumerate_balls(const Space& space) {
    std::map<std::vector<int>, Ball> dedup;
    for_each_ball(space, [&](int center, double radius, std::span<const int> members) {
        std::vector<int> key(members.begin(), members.end());
        auto it = dedup.find(key);
        if (it == dedup.end()) {
            Ball b;
            b.center = center;
            b.radius = radius;
            b.members = key;
            b.measure = 0.0;
            for (int m : key) b.measure += space.mass(m);
            dedup.emplace(std::move(key), std::move(b));
        } else if (radius < it->second.radius) {
            it->second.radius = radius;
            it->second.center = center;
        }
    });
    std::vector<Ball> out;
    out.reserve(dedup.size());
    for (auto& [k, b] : dedup) out.push_back(std::move(b));
    // Deterministic order: by size, then lexicographic member set.
    std::sort(out.begin(), out.end(), [](const Ball& a, const Ball& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

double doubling_constant(const Space& space) {
    const int n = space.size();
    if (n == 1) return 1.0;
    // The sup over continuous r is attained at radii where membership of
    // B(x,r) or B(x,2r) changes; scan distances, half-distances, and points
    // just above each.
    std::vector<double> crit;
    double best = 1.0;
    std::vector<std::pair<double, double>> row(n);  // (distance, mass)
    for (int x = 0; x < n; ++x) {
        for (int j = 0; j < n; ++j) row[j] = {space.dist(x, j), space.mass(j)};
        std::sort(row.begin(), row.end());
        crit.clear();
        for (int j = 1; j < n; ++j) {
            const double d = row[j].first;
            crit.push_back(d);
            crit.push_back(d / 2.0);
            crit.push_back(d * (1.0 + 1e-12));
            crit.push_back((d / 2.0) * (1.0 + 1e-12));
        }
        std::sort(crit.begin(), crit.end());
        crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
        for (double r : crit) {
            double small = 0.0, big = 0.0;
            const double r2 = 2.0 * r;
            for (const auto& [d, m] : row) {
                if (d < r) small += m;
                if (d < r2) big += m;
            }
            if (small > 0.0) best = std::max(best, big / small);
        }
    }
    return best;
}

StructuralConstants structural_constants(double kappa, double d_mu, bool interval_mode) {
    if (!(kappa >= 1.0)) throw InputError("kappa must be >= 1");
    if (!(d_mu >= 1.0)) throw InputError("doubling constant must be >= 1");
    StructuralConstants sc;
    sc.d_mu = d_mu;
    sc.theta_bar = 4.0 * kappa * kappa + kappa;
    // Work in logs: the formulas grow doubly fast in D_mu.
    const double log_tau = std::log(6.0) + d_mu * std::log(32.0 * std::pow(kappa, 4) * (4.0 * kappa + 1.0));
    sc.tau = log_tau > std::log(std::numeric_limits<double>::max())
                 ? std::numeric_limits<double>::infinity()
                 : std::exp(log_tau);
    if (std::isinf(sc.tau)) {
        sc.overflow = true;
        sc.c_bar = std::numeric_limits<double>::infinity();
    } else {
        const double log_cbar = std::log(32.0) + d_mu * std::log(kappa) +
                                d_mu * std::log(2.0 * sc.theta_bar) + std::log1p(sc.tau);
        if (log_cbar > std::log(std::numeric_limits<double>::max())) {
            sc.overflow = true;
            sc.c_bar = std::numeric_limits<double>::infinity();
        } else {
            sc.c_bar = 32.0 * std::pow(kappa, d_mu) * std::pow(2.0 * sc.theta_bar, d_mu) *
                       (1.0 + sc.tau);
        }
    }
    if (interval_mode) sc.c_bar = 2.0;
    return sc;
}

StructuralConstants structural_constants(const Space& space, CbarMode mode) {
    const bool interval =
        mode == CbarMode::Interval || (mode == CbarMode::Auto && space.is_interval_grid());
    if (mode == CbarMode::Interval && !space.is_interval_grid()) {
        throw InputError("interval-mode c_bar requested on a non-interval space");
    }
    return structural_constants(space.kappa(), doubling_constant(space), interval);
}

}  // namespace lorext
