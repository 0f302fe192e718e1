#pragma once

#include <string>
#include <vector>

#include "lorext/extrapolation.hpp"

#include "json.hpp"

namespace lorext {

using json = nlohmann::ordered_json;

/// Structured outcome of a verification run. payload is deterministic for a
/// fixed scenario + seed; pass mirrors the configured slack checks.
struct Report {
    std::string theorem;
    json payload;
    bool pass = true;
    std::vector<std::string> footnotes;

    std::string to_json_string() const;
    /// Flat rows theorem,witness,quantity,value with 17 significant digits.
    std::string to_csv() const;
};

struct ScenarioConfig {
    std::string theorem;  // thm5.1 | thm6.1 | thm6.2 | thm6.3 | thm6.4 | thm6.5 | cor6.1 | lemma6.1
    json space = json{{"interval_grid", 64}};
    std::string weight_kind = "power";      // power | const
    std::vector<double> weight_exponents = {0.0, 0.3, 0.6};
    double p = 2.0, s = 2.0, theta = 1.0, alpha = 0.25;
    int m = 1;
    int budget = 200;
    double slack = 10.0;
    double stability_tol = 0.05;
    unsigned long long seed = 0;
    bool grid_refine = true;   // also run on the doubled grid and compare
    bool allow_class_violation = false;
    int threads = 1;
};

ScenarioConfig scenario_from_json(const json& j);  // unknown keys rejected
json scenario_to_json(const ScenarioConfig& cfg);

/// max ||T f||_tgt / ||f||_src over the named test family; throws
/// ClassViolation when a power weight leaves the admissible exponent range
/// of `class_index` unless allowed.
struct BoundednessResult {
    double max_ratio = 0.0;
    std::string witness;  // name of the maximizing test function
    double characteristic = 1.0;
    bool class_ok = true;
};
BoundednessResult check_boundedness(const PointOperator& T, const NormFn& src, const NormFn& tgt,
                                    const std::vector<std::pair<std::string, Sample>>& family,
                                    double class_index, const Weight& w, double weight_exponent,
                                    bool allow_violation);

/// Named continuum test family sampled on the space (grid-consistent across
/// refinements); on generic spaces ball indicators and seeded fields.
std::vector<std::pair<std::string, Sample>> test_family(const SpacePtr& space, const Weight& w,
                                                        double p, unsigned long long seed);

struct LemmaBallCheck {
    double max_ratio = 0.0;
    double min_ratio = kInfinity;
    Ball witness;
};
/// For every ball and a family on it, the ratio
/// ||f||_{L^{p),s,theta}_w(B)} / ( w(B)^{-1/p} ||f||_{L^p_w(B)} ||chi_B||_{L^{p),theta}_w(B)} ).
LemmaBallCheck lemma_ball_check(const Weight& w, double p, double s, double theta);

struct NecessityExtraction {
    double extracted = 0.0;       // max over balls of the A_p ball product
    double extracted_root = 0.0;  // same in the power-1/p normalization
    double cap = 0.0;             // m_bound * lemma constant, bounds extracted_root
    double lemma_constant = 0.0;  // max lemma ratio on the proof profiles
    Ball witness;
    bool chain_ok = true;  // averaged lower bound <= ||M f_B|| verified (sampled)
};
/// Extraction with the proof profile f = chi_B w^{1-p'}.
NecessityExtraction necessity_maximal(const Weight& w, double p, double s, double theta,
                                      double m_bound);

struct HilbertNecessity {
    double max_indicator_ratio = 0.0;  // max ||chi_J|| / ||chi_J'|| over admissible pairs
    double cap = 0.0;                  // 2 * asserted H bound
    double half_factor = kInfinity;    // min ||H chi_J'||_(J) / ||chi_J||, proof's 1/2
    NecessityExtraction extraction;    // A_p-type extraction on interval balls
};
HilbertNecessity necessity_hilbert(const Weight& w, double p, double s, double theta,
                                   double h_bound);

struct FractionalNecessity {
    double closing_max = 0.0;  // max over balls of mu(B)^{a-1} w(B)^{1/q} (int_B w^{-p'/q})^{1/p'}
    Ball witness;
    double psi_ratio_spread = 0.0;  // max/min of psi(t)/t^{theta(1+alpha q)} on the probe grid
    double pairing_residual = 0.0;  // worst |1/(p-eta_B) - 1/(q-eps_B) - alpha|
};
FractionalNecessity necessity_fractional(const Weight& w, double p, double s, double q, double r,
                                         double alpha, double theta, double bound);

struct EquivalenceLegs {
    double ratio_i = 0.0;    // I_alpha(w^alpha .) sufficiency ratio
    double c_alpha = 0.0;    // pointwise M_alpha <= C_alpha I_alpha constant observed
    double ratio_ii = 0.0;   // M_alpha(w^alpha .) ratio
    FractionalNecessity necessity;
};
EquivalenceLegs equivalence_suite_frac(const Weight& w, double p, double s, double theta,
                                       double alpha, unsigned long long seed);

Report run_scenario(const ScenarioConfig& cfg);

/// Spearman rank correlation; 1.0 iff strictly increasing.
double spearman(const std::vector<double>& xs);

}  // namespace lorext
