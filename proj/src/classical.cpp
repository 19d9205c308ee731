#include "epiqm/classical.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace epiqm::classical {

namespace {

void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b,
                        const char* who) {
  if (!(a == b))
    throw SpaceMismatch(std::string(who) +
                        ": assignments live on different outcome spaces");
}

// Index of the first label carried by both supports, in space order.
std::optional<Eigen::Index> first_common_index(const ProbDist& a,
                                               const ProbDist& b, double tol) {
  for (Eigen::Index i = 0; i < a.space.size(); ++i)
    if (a.probs(i) > tol && b.probs(i) > tol) return i;
  return std::nullopt;
}

ProbDist normalized(OutcomeSpace space, Eigen::VectorXd raw) {
  return ProbDist(std::move(space), raw / raw.sum());
}

}  // namespace

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels_in)
    : labels(std::move(labels_in)) {
  if (labels.empty()) throw InvalidState("OutcomeSpace: no labels");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw InvalidState("OutcomeSpace: duplicate labels");
}

Eigen::Index OutcomeSpace::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw UnknownLabel("label '" + label + "' not in outcome space");
  return static_cast<Eigen::Index>(it - labels.begin());
}

OutcomeSpace bell_space() {
  return OutcomeSpace({"phi+", "phi-", "psi+", "psi-"});
}

OutcomeSpace binary_space() { return OutcomeSpace({"0", "1"}); }

ProbDist::ProbDist(OutcomeSpace space_in, Eigen::VectorXd probs_in)
    : space(std::move(space_in)), probs(std::move(probs_in)) {
  if (probs.size() != space.size())
    throw InvalidState("ProbDist: entry count does not match label count");
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) < -kAtol || probs(i) > 1.0 + kAtol)
      throw InvalidState("ProbDist: entry " + std::to_string(probs(i)) +
                         " outside [0,1]");
    probs(i) = std::clamp(probs(i), 0.0, 1.0);
  }
  if (std::abs(probs.sum() - 1.0) > kProbTol)
    throw InvalidState("ProbDist: probabilities sum to " +
                       std::to_string(probs.sum()));
}

ProbDist::ProbDist(OutcomeSpace space_in, std::initializer_list<double> probs_in)
    : ProbDist(std::move(space_in),
               Eigen::Map<const Eigen::VectorXd>(probs_in.begin(),
                                                 static_cast<Eigen::Index>(
                                                     probs_in.size()))) {}

double ProbDist::at(const std::string& label) const {
  return probs(space.index_of(label));
}

ConditionalTable::ConditionalTable(OutcomeSpace given, OutcomeSpace result,
                                   Eigen::MatrixXd rows)
    : given_space(std::move(given)),
      result_space(std::move(result)),
      table(std::move(rows)) {
  if (table.rows() != given_space.size() || table.cols() != result_space.size())
    throw InvalidState("ConditionalTable: table shape does not match spaces");
  for (Eigen::Index y = 0; y < table.rows(); ++y) {
    if (table.row(y).minCoeff() < -kAtol)
      throw InvalidState("ConditionalTable: negative likelihood entry");
    if (std::abs(table.row(y).sum() - 1.0) > kProbTol)
      throw InvalidState("ConditionalTable: row " + std::to_string(y) +
                         " is not normalized");
  }
}

JointDistribution::JointDistribution(std::vector<OutcomeSpace> spaces_in,
                                     Eigen::VectorXd probs_in)
    : spaces(std::move(spaces_in)), probs(std::move(probs_in)) {
  if (spaces.empty()) throw InvalidState("JointDistribution: no spaces");
  Eigen::Index cells = 1;
  for (const auto& s : spaces) cells *= s.size();
  if (probs.size() != cells)
    throw InvalidState("JointDistribution: cell count does not match spaces");
  if (probs.minCoeff() < -kAtol)
    throw InvalidState("JointDistribution: negative cell");
  if (std::abs(probs.sum() - 1.0) > kProbTol)
    throw InvalidState("JointDistribution: cells sum to " +
                       std::to_string(probs.sum()));
}

Eigen::Index JointDistribution::flat_index(
    const std::vector<Eigen::Index>& idx) const {
  if (idx.size() != spaces.size())
    throw InvalidState("JointDistribution: index arity mismatch");
  Eigen::Index flat = 0;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= spaces[k].size())
      throw InvalidState("JointDistribution: index out of range");
    flat = flat * spaces[k].size() + idx[k];
  }
  return flat;
}

double JointDistribution::at(const std::vector<Eigen::Index>& idx) const {
  return probs(flat_index(idx));
}

std::vector<std::string> support(const ProbDist& d, double tol) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < d.space.size(); ++i)
    if (d.probs(i) > tol) out.push_back(d.space.labels[i]);
  return out;
}

bool compatible(const ProbDist& a, const ProbDist& b, double tol) {
  require_same_space(a.space, b.space, "compatible");
  return first_common_index(a, b, tol).has_value();
}

bool agree(const std::vector<ProbDist>& dists) {
  for (std::size_t i = 1; i < dists.size(); ++i) {
    require_same_space(dists[0].space, dists[i].space, "agree");
    if ((dists[0].probs - dists[i].probs).cwiseAbs().maxCoeff() > kProbTol)
      return false;
  }
  return true;
}

ProbDist bayes_condition(const ProbDist& prior, const ConditionalTable& lik,
                         const std::string& observed) {
  require_same_space(prior.space, lik.given_space, "bayes_condition");
  const Eigen::Index x = lik.result_space.index_of(observed);
  const Eigen::VectorXd slice = lik.table.col(x);
  const double evidence = slice.dot(prior.probs);
  if (evidence <= kAtol)
    throw ZeroEvidence("bayes_condition: observation '" + observed +
                       "' has zero prior probability");
  return normalized(prior.space,
                    slice.cwiseProduct(prior.probs) / evidence);
}

ReconciliationExperiment reconciliation_likelihood(const ProbDist& a,
                                                   const ProbDist& b,
                                                   double tol) {
  require_same_space(a.space, b.space, "reconciliation_likelihood");
  const auto star = first_common_index(a, b, tol);
  if (!star)
    throw Incompatible(
        "reconciliation_likelihood: supports have no common element");

  const Eigen::Index n = a.space.size();
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n, 2);
  for (Eigen::Index y = 0; y < n; ++y) {
    rows(y, 0) = (y == *star) ? 1.0 : 0.0;  // X=0 flags y*
    rows(y, 1) = 1.0 - rows(y, 0);
  }
  ReconciliationExperiment exp;
  exp.likelihood = ConditionalTable(a.space, binary_space(), std::move(rows));
  exp.agreeing_outcome = "0";
  exp.common_label = a.space.labels[static_cast<std::size_t>(*star)];
  return exp;
}

ProbDist improve(const ProbDist& prior, const ConditionalTable& report_lik,
                 const std::string& report_label) {
  require_same_space(prior.space, report_lik.given_space, "improve");
  const Eigen::Index r = report_lik.result_space.index_of(report_label);
  const Eigen::VectorXd hadamard =
      report_lik.table.col(r).cwiseProduct(prior.probs);
  const double total = hadamard.sum();
  if (total <= kAtol)
    throw ZeroEvidence("improve: the prior rules out report '" + report_label +
                       "'");
  return normalized(prior.space, hadamard / total);
}

ProbDist pool_linear(const std::vector<ProbDist>& dists,
                     const std::vector<double>& weights) {
  if (dists.empty() || dists.size() != weights.size())
    throw BadWeights("pool_linear: need one weight per assignment");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw BadWeights("pool_linear: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw BadWeights("pool_linear: weights sum to " + std::to_string(total));

  Eigen::VectorXd mix = Eigen::VectorXd::Zero(dists[0].space.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    require_same_space(dists[0].space, dists[i].space, "pool_linear");
    mix += weights[i] * dists[i].probs;
  }
  return ProbDist(dists[0].space, std::move(mix));
}

ProbDist pool_multiplicative(const std::vector<ProbDist>& dists,
                             const std::vector<double>& weights,
                             const std::optional<ProbDist>& shared_prior) {
  if (dists.empty() || dists.size() != weights.size())
    throw BadWeights("pool_multiplicative: need one weight per assignment");
  double total = 0.0;
  for (double w : weights) {
    if (w <= 0.0 || w >= 1.0)
      throw BadWeights("pool_multiplicative: weights must lie strictly in (0,1)");
    total += w;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw BadWeights("pool_multiplicative: weights sum to " +
                     std::to_string(total));

  const OutcomeSpace& space = dists[0].space;
  Eigen::VectorXd prod = Eigen::VectorXd::Ones(space.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    require_same_space(space, dists[i].space, "pool_multiplicative");
    for (Eigen::Index y = 0; y < prod.size(); ++y)
      prod(y) *= std::pow(dists[i].probs(y), weights[i]);  // 0^w == 0
  }
  if (shared_prior) {
    require_same_space(space, shared_prior->space, "pool_multiplicative");
    prod = prod.cwiseProduct(shared_prior->probs);
  }
  const double norm = prod.sum();
  if (norm <= kAtol)
    throw JointlyIncompatible(
        "pool_multiplicative: assignments are not jointly compatible");
  return normalized(space, prod / norm);
}

ProbDist pool_supra(const ProbDist& prior,
                    const std::vector<AgentReport>& reports) {
  Eigen::VectorXd post = prior.probs;
  for (const auto& report : reports) {
    require_same_space(prior.space, report.likelihood.given_space, "pool_supra");
    const Eigen::Index x = report.likelihood.result_space.index_of(report.observed);
    post = post.cwiseProduct(report.likelihood.table.col(x));
  }
  const double evidence = post.sum();
  if (evidence <= kAtol)
    throw ZeroEvidence("pool_supra: joint report has zero prior probability");
  return normalized(prior.space, post / evidence);
}

JointDistribution construct_objective_joint(const ProbDist& friend_dist,
                                            const ProbDist& wigner_dist) {
  require_same_space(friend_dist.space, wigner_dist.space,
                     "construct_objective_joint");
  const auto star = first_common_index(friend_dist, wigner_dist, kSupportTol);
  if (!star)
    throw Incompatible("construct_objective_joint: assignments incompatible");

  const Eigen::Index n = friend_dist.space.size();
  Eigen::VectorXd common = Eigen::VectorXd::Zero(n);
  common(*star) = 1.0;

  // Peel the point mass at y* out of each input as far as it goes; the
  // leftover is a normalized residual. A weight within kProbTol of 1 means
  // the input is the common part itself and its residual never occurs.
  const auto residual = [&](const ProbDist& d, double weight) -> Eigen::VectorXd {
    if (1.0 - weight <= kProbTol)
      return Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    Eigen::VectorXd r = (d.probs - weight * common) / (1.0 - weight);
    return r.cwiseMax(0.0);
  };
  const double p_f = std::min(friend_dist.probs(*star), 1.0);
  const double p_w = std::min(wigner_dist.probs(*star), 1.0);
  const Eigen::VectorXd resid_f = residual(friend_dist, p_f);
  const Eigen::VectorXd resid_w = residual(wigner_dist, p_w);
  const Eigen::VectorXd filler =
      Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

  // Cell layout: (F=0,W=0) -> common, (F=0,W=1) -> friend residual,
  // (F=1,W=0) -> wigner residual, (F=1,W=1) -> irrelevant filler.
  const double cell_w[2][2] = {{p_f * p_w, (1.0 - p_f) * p_w},
                               {p_f * (1.0 - p_w), (1.0 - p_f) * (1.0 - p_w)}};
  const Eigen::VectorXd* cell_d[2][2] = {{&common, &resid_f},
                                         {&resid_w, &filler}};

  Eigen::VectorXd flat = Eigen::VectorXd::Zero(n * 4);
  for (Eigen::Index y = 0; y < n; ++y)
    for (Eigen::Index f = 0; f < 2; ++f)
      for (Eigen::Index w = 0; w < 2; ++w)
        flat((y * 2 + f) * 2 + w) = (*cell_d[f][w])(y)*cell_w[f][w];

  return JointDistribution({friend_dist.space, binary_space(), binary_space()},
                           std::move(flat));
}

ProbDist condition_joint(const JointDistribution& joint, std::size_t var,
                         const std::string& value) {
  if (var == 0 || var >= joint.spaces.size())
    throw BadConfig("condition_joint: can only condition on a non-Y variable");
  const Eigen::Index want = joint.spaces[var].index_of(value);

  const Eigen::Index n_y = joint.spaces[0].size();
  Eigen::VectorXd masses = Eigen::VectorXd::Zero(n_y);

  std::vector<Eigen::Index> idx(joint.spaces.size(), 0);
  const auto advance = [&]() -> bool {
    for (std::size_t k = joint.spaces.size(); k-- > 0;) {
      if (++idx[k] < joint.spaces[k].size()) return true;
      idx[k] = 0;
    }
    return false;
  };
  do {
    if (idx[var] == want) masses(idx[0]) += joint.at(idx);
  } while (advance());

  const double marginal = masses.sum();
  if (marginal <= kAtol)
    throw ZeroEvidence("condition_joint: conditioning event has no mass");
  return normalized(joint.spaces[0], masses / marginal);
}

}  // namespace epiqm::classical
