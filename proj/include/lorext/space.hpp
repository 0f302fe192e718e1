#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lorext/errors.hpp"

namespace lorext {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Ball B(x,r) = {y : d(x,y) < r} (strict inequality).
struct Ball {
    int center = 0;
    double radius = 0.0;
    std::vector<int> members;  // sorted point indices, contains center
    double measure = 0.0;      // mu(B) = sum of member masses
};

/// Constants of the underlying homogeneous-type structure:
///   theta = 4*kappa^2 + kappa
///   tau   = 6 * (32 kappa^4 (4 kappa + 1))^{D_mu}
///   c_bar = 32 * kappa^{D_mu} * (2 theta)^{D_mu} * (1 + tau)
/// On an interval of the real line c_bar may be replaced by 2 (interval mode).
struct StructuralConstants {
    double d_mu = 1.0;
    double theta_bar = 5.0;
    double tau = 0.0;
    double c_bar = 0.0;
    bool overflow = false;  // set when the formula exceeds double range (+inf reported)
};

enum class CbarMode {
    Auto,      // interval mode on interval grids, formula otherwise
    Formula,   // always Eqs. of the structure constants
    Interval,  // c_bar = 2 (only sound when the space is an interval in R)
};

/// Finite quasi-metric measure space. Immutable after construction; all
/// member queries are pure and safe to share across threads.
class Space {
  public:
    // dist: row-major n*n, symmetric, zero diagonal, positive off-diagonal.
    // mass: n strictly positive values.
    // kappa: optional known quasi-triangle constant; computed minimally if absent.
    Space(std::vector<double> dist, std::vector<double> mass,
          std::optional<double> kappa = std::nullopt,
          std::vector<std::string> labels = {});

    static SpacePtr make(std::vector<double> dist, std::vector<double> mass,
                         std::optional<double> kappa = std::nullopt,
                         std::vector<std::string> labels = {});

    int size() const { return n_; }
    double dist(int i, int j) const { return dist_[static_cast<size_t>(i) * n_ + j]; }
    double mass(int i) const { return mass_[i]; }
    double total_mass() const { return total_mass_; }
    double kappa() const { return kappa_; }
    double diameter() const { return diameter_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool is_interval_grid() const { return interval_n_ > 0; }
    int interval_n() const { return interval_n_; }
    /// Coordinate of point i for interval grids: (i + 1/2) / n.
    double coordinate(int i) const;

    const std::vector<double>& dist_matrix() const { return dist_; }
    const std::vector<double>& masses() const { return mass_; }

  private:
    friend SpacePtr interval_grid(int n);
    int n_ = 0;
    std::vector<double> dist_;
    std::vector<double> mass_;
    std::vector<std::string> labels_;
    double kappa_ = 1.0;
    double total_mass_ = 0.0;
    double diameter_ = 0.0;
    int interval_n_ = 0;  // > 0 when built by interval_grid
};

/// Smallest kappa >= 1 with d(x,y) <= kappa (d(x,z) + d(z,y)) over all triples.
/// Also validates symmetry / zero-diagonal / positive off-diagonal.
double validate_quasi_metric(const Space& space);

/// n midpoints (k - 1/2)/n of (0,1), Euclidean distance, mass 1/n each.
SpacePtr interval_grid(int n);

/// Every set-distinct ball, deduped by member set (smallest defining radius,
/// smallest center kept). Canonical radii: distinct distance values plus one
/// radius exceeding the diameter.
std::vector<Ball> enumerate_balls(const Space& space);

/// Streaming variant: visits balls per center (deduped within each center but
/// a member set reachable from several centers is visited once per center).
/// members span is only valid during the callback.
void for_each_ball(const Space& space,
                   const std::function<void(int center, double radius,
                                            std::span<const int> members)>& fn);

/// Exact sup over x, r > 0 of mu(B(x,2r)) / mu(B(x,r)).
double doubling_constant(const Space& space);

StructuralConstants structural_constants(double kappa, double d_mu,
                                         bool interval_mode = false);
StructuralConstants structural_constants(const Space& space,
                                         CbarMode mode = CbarMode::Auto);

}  // namespace lorext
