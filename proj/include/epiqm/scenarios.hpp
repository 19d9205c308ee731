#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epiqm/classical.hpp"
#include "epiqm/quantum.hpp"

namespace epiqm::scenarios {

using classical::ProbDist;
using quantum::DensityOperator;

enum class Variant {
  kCanonical,
  kWrongInitial,
  kNotGate,
  kTimeEvolution,
  kPhase,
  kTwoWigners,
  kBenefitOfDoubt,
  kIgnorantWigner,
};

Variant variant_from_name(std::string_view name);  // throws BadConfig
std::string variant_name(Variant variant);
std::vector<std::string> variant_names();

// Parameters are accepted exactly when the variant consumes them:
// phase -> phi; time_evolution -> omega_t (the dimensionless product);
// benefit_of_doubt -> epsilon in (1e-6, 1/2); two_wigners -> phi_left and
// phi_right.
struct ScenarioConfig {
  Variant variant = Variant::kCanonical;
  std::optional<double> phi;
  std::optional<double> omega_t;
  std::optional<double> epsilon;
  std::optional<double> phi_left;
  std::optional<double> phi_right;

  void validate() const;  // throws BadConfig
};

enum class Verdict { kCompatible, kIncompatible, kIncomparable, kNotApplicable };

// Extra block for the three-party variant; the primary fields of
// ScenarioResult then describe the left Wigner against the Friend.
struct TwoWignerBlock {
  ProbDist right_dist;
  DensityOperator right_state;
  Verdict right_vs_friend_classical = Verdict::kNotApplicable;
  Verdict right_vs_friend_quantum = Verdict::kNotApplicable;
  Verdict left_vs_right_classical = Verdict::kNotApplicable;
  Verdict left_vs_right_quantum = Verdict::kNotApplicable;
};

struct ScenarioResult {
  ProbDist wigner_dist;
  ProbDist friend_dist;
  std::optional<DensityOperator> wigner_state;
  std::optional<DensityOperator> friend_state;
  Verdict classical_compatible = Verdict::kNotApplicable;
  Verdict quantum_compatible = Verdict::kNotApplicable;
  std::optional<TwoWignerBlock> two_wigners;
};

ScenarioResult run_scenario(const ScenarioConfig& config,
                            double tol = kSupportTol);

enum class Mode { kClassical, kQuantum };

// Outcome of running the reconciliation experiment on a scenario's pair of
// assignments. A nullopt posterior marks the agent for whom the observed
// outcome carried zero evidence, so no update exists.
struct ReconciliationResult {
  std::optional<ProbDist> wigner_dist;
  std::optional<ProbDist> friend_dist;
  std::optional<DensityOperator> wigner_state;
  std::optional<DensityOperator> friend_state;
  std::string common_label;
};

ReconciliationResult run_reconciliation(const ScenarioConfig& config, Mode mode,
                                        const std::string& outcome,
                                        double tol = kSupportTol);

enum class ImprovementCase { kC1a, kC1b, kC1c, kC1d, kQ2a, kQ2b, kQ2c, kQ2d };

ImprovementCase improvement_case_from_name(std::string_view name);
std::string improvement_case_name(ImprovementCase id);
std::vector<std::string> improvement_case_names();

using ImprovementResult = std::variant<ProbDist, DensityOperator>;

// The eight expert-consultation cases: stubborn/open-minded Wigner crossed
// with who plays the expert, classically and quantumly. epsilon is required
// exactly for the open-minded cases (c1c, c1d, q2c, q2d).
ImprovementResult run_improvement(ImprovementCase id,
                                  std::optional<double> epsilon = {});

enum class PoolMethod { kLinear, kMultiplicative, kSupra };

PoolMethod pool_method_from_name(std::string_view name);

// Pools the two agents' assignments. linear/multiplicative take one weight
// per agent in (wigner, friend) order; supra takes none. When epsilon is
// given, Wigner's assignment is the benefit-of-the-doubt one.
ProbDist run_pooling(PoolMethod method, const std::vector<double>& weights = {},
                     std::optional<double> epsilon = {});

// The canonical assignments shared by most variants.
DensityOperator canonical_wigner_state();
DensityOperator canonical_friend_state();
ProbDist canonical_wigner_dist();
ProbDist canonical_friend_dist();

// Demo helper: draw one outcome label from a distribution with a seeded
// generator. Reconciliation outcomes are normally caller-supplied; this
// exists only to make example runs look alive, and nothing load-bearing
// depends on it.
std::string sample_outcome(const ProbDist& dist, std::uint64_t seed);

}  // namespace epiqm::scenarios
