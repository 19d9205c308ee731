#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "epiqm/errors.hpp"
#include "epiqm/tolerances.hpp"

namespace epiqm::classical {

// Ordered finite outcome space; labels are the public identity of each slot.
struct OutcomeSpace {
  std::vector<std::string> labels;

  OutcomeSpace() = default;
  explicit OutcomeSpace(std::vector<std::string> labels_in);

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels.size()); }
  Eigen::Index index_of(const std::string& label) const;  // throws UnknownLabel
  bool operator==(const OutcomeSpace& other) const = default;
};

// The four Bell outcomes in the order used throughout: phi+, phi-, psi+, psi-.
OutcomeSpace bell_space();
OutcomeSpace binary_space();  // {"0","1"}

// An agent's probability assignment over an outcome space. Entries within
// kAtol of [0,1] are clamped on construction; the total must be 1 to kProbTol.
struct ProbDist {
  OutcomeSpace space;
  Eigen::VectorXd probs;

  ProbDist() = default;
  ProbDist(OutcomeSpace space_in, Eigen::VectorXd probs_in);
  ProbDist(OutcomeSpace space_in, std::initializer_list<double> probs_in);

  double at(const std::string& label) const;
};

// Likelihood table P(X|Y): one distribution over the result space per
// hypothesis row. rows index given_space (Y), columns index result_space (X).
struct ConditionalTable {
  OutcomeSpace given_space;
  OutcomeSpace result_space;
  Eigen::MatrixXd table;

  ConditionalTable() = default;
  ConditionalTable(OutcomeSpace given, OutcomeSpace result, Eigen::MatrixXd rows);
};

// Joint distribution over a product of outcome spaces, stored flat row-major
// (last space varies fastest).
struct JointDistribution {
  std::vector<OutcomeSpace> spaces;
  Eigen::VectorXd probs;

  JointDistribution() = default;
  JointDistribution(std::vector<OutcomeSpace> spaces_in, Eigen::VectorXd probs_in);

  Eigen::Index flat_index(const std::vector<Eigen::Index>& idx) const;
  double at(const std::vector<Eigen::Index>& idx) const;
};

// Labels carrying more than tol probability, in space order.
std::vector<std::string> support(const ProbDist& d, double tol = kSupportTol);

// Non-trivial support intersection (Bayesian compatibility). Distributions
// over different spaces are not comparable at all: SpaceMismatch.
bool compatible(const ProbDist& a, const ProbDist& b, double tol = kSupportTol);

// Exact coincidence of all assignments, entrywise to kProbTol.
bool agree(const std::vector<ProbDist>& dists);

// Bayes' theorem: posterior(y) = lik(observed|y) * prior(y) / evidence.
// An observation the prior rules out entirely is not conditionable
// (ZeroEvidence) -- Cromwell's rule in error form.
ProbDist bayes_condition(const ProbDist& prior, const ConditionalTable& lik,
                         const std::string& observed);

// The reconciliation experiment built from two compatible assignments: a
// binary test flagging the first common-support label. Conditioning both
// agents on the agreeing outcome yields identical point-mass posteriors.
struct ReconciliationExperiment {
  ConditionalTable likelihood;   // Y -> {"0","1"}
  std::string agreeing_outcome;  // always "0"
  std::string common_label;      // the flagged y*
};
ReconciliationExperiment reconciliation_likelihood(const ProbDist& a,
                                                   const ProbDist& b,
                                                   double tol = kSupportTol);

// State improvement: update a prior by treating another agent's announced
// assignment as data. Entrywise product of the report's likelihood slice
// with the prior, then normalization.
ProbDist improve(const ProbDist& prior, const ConditionalTable& report_lik,
                 const std::string& report_label);

// Weighted average of assignments; weights are nonnegative and sum to one.
ProbDist pool_linear(const std::vector<ProbDist>& dists,
                     const std::vector<double>& weights);

// Normalized weighted geometric mean, optionally times a shared prior.
// Weights must lie strictly inside (0,1) and sum to one. Inputs with
// disjoint common support leave nothing to normalize: JointlyIncompatible.
ProbDist pool_multiplicative(const std::vector<ProbDist>& dists,
                             const std::vector<double>& weights,
                             const std::optional<ProbDist>& shared_prior = {});

// Supra-Bayesian pooling: a neutral prior conditioned on every agent's
// report at once, assuming the reports conditionally independent given Y.
struct AgentReport {
  ConditionalTable likelihood;
  std::string observed;
};
ProbDist pool_supra(const ProbDist& prior, const std::vector<AgentReport>& reports);

// Objectivist "virtual past": a joint distribution over Y x F x W whose
// conditionals on F=0 and W=0 recover the two inputs. Built from the common
// part at the first shared-support label plus normalized residuals.
JointDistribution construct_objective_joint(const ProbDist& friend_dist,
                                            const ProbDist& wigner_dist);

// Distribution of variable 0 given (variable var = value), marginalizing
// everything else. ZeroEvidence when the conditioning event has no mass.
ProbDist condition_joint(const JointDistribution& joint, std::size_t var,
                         const std::string& value);

}  // namespace epiqm::classical
