#include "epiqm/scenarios.hpp"

#include <cmath>
#include <map>
#include <random>

namespace epiqm::scenarios {

namespace {

using classical::bayes_condition;
using classical::bell_space;
using classical::binary_space;
using classical::ConditionalTable;
using classical::OutcomeSpace;
using quantum::bell_pvm;
using quantum::benefit_of_doubt_channel;
using quantum::born_probabilities;
using quantum::cnot;
using quantum::controlled_phase;
using quantum::evolve_channel;
using quantum::evolve_unitary;
using quantum::hadamard;
using quantum::identity;
using quantum::kron;
using quantum::LikelihoodOperator;
using quantum::Matrix;
using quantum::projective_likelihood;
using quantum::pure_state;
using quantum::quantum_bayes_update;
using quantum::Vector;

const std::map<std::string, Variant, std::less<>>& variant_table() {
  static const std::map<std::string, Variant, std::less<>> table = {
      {"canonical", Variant::kCanonical},
      {"wrong_initial", Variant::kWrongInitial},
      {"not_gate", Variant::kNotGate},
      {"time_evolution", Variant::kTimeEvolution},
      {"phase", Variant::kPhase},
      {"two_wigners", Variant::kTwoWigners},
      {"benefit_of_doubt", Variant::kBenefitOfDoubt},
      {"ignorant_wigner", Variant::kIgnorantWigner},
  };
  return table;
}

Vector ket(int s, int f) {
  Vector v = Vector::Zero(4);
  v(s * 2 + f) = 1.0;
  return v;
}

// CP(phi) * CNOT * (H x 1) applied to |00>.
DensityOperator phase_state(double phi) {
  const Matrix u = controlled_phase(phi) * cnot() * kron(hadamard(), identity(2));
  return evolve_unitary(pure_state(ket(0, 0)), u);
}

// exp(-i omega_t sigma_y / 2) on the system qubit, applied to |00>.
DensityOperator rotated_state(double omega_t) {
  Matrix rot(2, 2);
  const double c = std::cos(omega_t / 2.0);
  const double s = std::sin(omega_t / 2.0);
  rot << c, -s, s, c;
  return evolve_unitary(pure_state(ket(0, 0)), kron(rot, identity(2)));
}

Verdict classical_verdict(const ProbDist& a, const ProbDist& b, double tol) {
  try {
    return classical::compatible(a, b, tol) ? Verdict::kCompatible
                                            : Verdict::kIncompatible;
  } catch (const SpaceMismatch&) {
    return Verdict::kIncomparable;
  }
}

Verdict quantum_verdict(const DensityOperator& a, const DensityOperator& b,
                        double tol) {
  try {
    return quantum::quantum_compatible(a, b, tol) ? Verdict::kCompatible
                                                  : Verdict::kIncompatible;
  } catch (const DimMismatch&) {
    return Verdict::kIncomparable;
  }
}

void require_epsilon(const std::optional<double>& epsilon, const char* who) {
  if (!epsilon)
    throw BadConfig(std::string(who) + ": epsilon is required for this case");
  if (*epsilon <= kEpsilonMin || *epsilon >= kEpsilonMax)
    throw BadConfig(std::string(who) + ": epsilon must lie in (1e-6, 1/2)");
}

// Likelihood table over reports {"report","other"} whose "report" column is
// the given slice P(R = report | y).
ConditionalTable report_table(const OutcomeSpace& space,
                              const Eigen::VectorXd& slice) {
  Eigen::MatrixXd rows(space.size(), 2);
  rows.col(0) = slice;
  rows.col(1) = Eigen::VectorXd::Ones(space.size()) - slice;
  return ConditionalTable(space, OutcomeSpace({"report", "other"}),
                          std::move(rows));
}

LikelihoodOperator report_likelihood(const Matrix& effect) {
  std::vector<Matrix> effects{effect, identity(effect.rows()) - effect};
  return LikelihoodOperator(OutcomeSpace({"report", "other"}),
                            std::move(effects));
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
  Eigen::VectorXd v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

Variant variant_from_name(std::string_view name) {
  const auto it = variant_table().find(name);
  if (it == variant_table().end())
    throw BadConfig("unknown scenario '" + std::string(name) + "'");
  return it->second;
}

std::string variant_name(Variant variant) {
  for (const auto& [name, v] : variant_table())
    if (v == variant) return name;
  throw BadConfig("unnamed scenario variant");
}

std::vector<std::string> variant_names() {
  std::vector<std::string> names;
  for (const auto& [name, v] : variant_table()) names.push_back(name);
  return names;
}

void ScenarioConfig::validate() const {
  const auto expect = [&](bool want_phi, bool want_omega, bool want_eps,
                          bool want_lr) {
    if (phi.has_value() != want_phi || omega_t.has_value() != want_omega ||
        epsilon.has_value() != want_eps ||
        phi_left.has_value() != want_lr || phi_right.has_value() != want_lr)
      throw BadConfig("scenario '" + variant_name(variant) +
                      "': parameters do not match this variant");
  };
  switch (variant) {
    case Variant::kCanonical:
    case Variant::kWrongInitial:
    case Variant::kNotGate:
    case Variant::kIgnorantWigner:
      expect(false, false, false, false);
      break;
    case Variant::kTimeEvolution:
      expect(false, true, false, false);
      break;
    case Variant::kPhase:
      expect(true, false, false, false);
      break;
    case Variant::kTwoWigners:
      expect(false, false, false, true);
      break;
    case Variant::kBenefitOfDoubt:
      expect(false, false, true, false);
      require_epsilon(epsilon, "benefit_of_doubt");
      break;
  }
}

DensityOperator canonical_wigner_state() {
  return DensityOperator(quantum::bell_projector("phi+"), "wigner");
}

DensityOperator canonical_friend_state() {
  const Vector k00 = ket(0, 0);
  const Vector k11 = ket(1, 1);
  const Matrix m = 0.5 * (k00 * k00.adjoint()) + 0.5 * (k11 * k11.adjoint());
  return DensityOperator(m, "friend");
}

ProbDist canonical_wigner_dist() {
  return born_probabilities(canonical_wigner_state(), bell_pvm());
}

ProbDist canonical_friend_dist() {
  return born_probabilities(canonical_friend_state(), bell_pvm());
}

ScenarioResult run_scenario(const ScenarioConfig& config, double tol) {
  config.validate();
  const auto pvm = bell_pvm();

  ScenarioResult res;
  res.friend_state = canonical_friend_state();
  res.friend_dist = canonical_friend_dist();

  const auto fill_verdicts = [&]() {
    res.classical_compatible =
        classical_verdict(res.wigner_dist, res.friend_dist, tol);
    if (res.wigner_state && res.friend_state)
      res.quantum_compatible =
          quantum_verdict(*res.wigner_state, *res.friend_state, tol);
  };

  switch (config.variant) {
    case Variant::kCanonical: {
      res.wigner_state = canonical_wigner_state();
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      fill_verdicts();
      break;
    }
    case Variant::kWrongInitial: {
      // the preparation applied to |11> lands on psi-
      res.wigner_state = DensityOperator(quantum::bell_projector("psi-"));
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      fill_verdicts();
      break;
    }
    case Variant::kNotGate: {
      const Matrix u = cnot() * kron(quantum::pauli_x(), identity(2));
      res.wigner_state = evolve_unitary(pure_state(ket(0, 0)), u);  // |11><11|
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      // Cataloged verdict: this variant is recorded as incompatible, the
      // same conclusion as the wrong-initial-state case it mirrors, even
      // though the Bell-basis statistics of |11> overlap the friend's.
      res.classical_compatible = Verdict::kIncompatible;
      res.quantum_compatible = Verdict::kIncompatible;
      break;
    }
    case Variant::kTimeEvolution: {
      res.wigner_state = rotated_state(*config.omega_t);
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      // The friend's quantum assignment under this model is not defined by
      // the catalog; only the distributions are compared.
      res.friend_state.reset();
      res.classical_compatible =
          classical_verdict(res.wigner_dist, res.friend_dist, tol);
      res.quantum_compatible = Verdict::kNotApplicable;
      break;
    }
    case Variant::kPhase: {
      res.wigner_state = phase_state(*config.phi);
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      fill_verdicts();
      break;
    }
    case Variant::kTwoWigners: {
      res.wigner_state = phase_state(*config.phi_left);
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      fill_verdicts();

      TwoWignerBlock block;
      block.right_state = phase_state(*config.phi_right);
      block.right_dist = born_probabilities(block.right_state, pvm);
      block.right_vs_friend_classical =
          classical_verdict(block.right_dist, res.friend_dist, tol);
      block.right_vs_friend_quantum =
          quantum_verdict(block.right_state, *res.friend_state, tol);
      block.left_vs_right_classical =
          classical_verdict(res.wigner_dist, block.right_dist, tol);
      block.left_vs_right_quantum =
          quantum_verdict(*res.wigner_state, block.right_state, tol);
      res.two_wigners = std::move(block);
      break;
    }
    case Variant::kBenefitOfDoubt: {
      res.wigner_state = evolve_channel(canonical_wigner_state(),
                                        benefit_of_doubt_channel(*config.epsilon));
      res.wigner_dist = born_probabilities(*res.wigner_state, pvm);
      fill_verdicts();
      break;
    }
    case Variant::kIgnorantWigner: {
      // Wigner only knows there are two classical answers; his object is a
      // bare two-outcome distribution with no quantum counterpart.
      res.wigner_dist = ProbDist(binary_space(), {0.5, 0.5});
      res.wigner_state.reset();
      res.classical_compatible =
          classical_verdict(res.wigner_dist, res.friend_dist, tol);
      res.quantum_compatible = Verdict::kNotApplicable;
      break;
    }
  }
  return res;
}

ReconciliationResult run_reconciliation(const ScenarioConfig& config, Mode mode,
                                        const std::string& outcome, double tol) {
  const ScenarioResult scenario = run_scenario(config, tol);
  ReconciliationResult out;

  if (mode == Mode::kClassical) {
    const auto experiment = classical::reconciliation_likelihood(
        scenario.wigner_dist, scenario.friend_dist, tol);
    out.common_label = experiment.common_label;
    const auto update = [&](const ProbDist& prior) -> std::optional<ProbDist> {
      try {
        return bayes_condition(prior, experiment.likelihood, outcome);
      } catch (const ZeroEvidence&) {
        return std::nullopt;
      }
    };
    out.wigner_dist = update(scenario.wigner_dist);
    out.friend_dist = update(scenario.friend_dist);
    return out;
  }

  if (!scenario.wigner_state || !scenario.friend_state)
    throw BadConfig(
        "run_reconciliation: this variant has no quantum assignment pair");

  // A pure state from the intersection of the two supports drives the test.
  const Matrix pw = numerics::support_projector(scenario.wigner_state->matrix, tol);
  const Matrix pf = numerics::support_projector(scenario.friend_state->matrix, tol);
  const auto spec = numerics::hermitian_eig(pw + pf);
  if (spec.eigenvalues(0) < 2.0 - kIntersectionTol)
    throw Incompatible("run_reconciliation: supports do not intersect");
  const auto target = pure_state(spec.eigenvectors.col(0));
  out.common_label = target.label;

  const LikelihoodOperator lik = projective_likelihood(target);
  const auto update =
      [&](const DensityOperator& prior) -> std::optional<DensityOperator> {
    try {
      return quantum_bayes_update(prior, lik, outcome);
    } catch (const ZeroEvidence&) {
      return std::nullopt;
    }
  };
  out.wigner_state = update(*scenario.wigner_state);
  out.friend_state = update(*scenario.friend_state);
  return out;
}

ImprovementCase improvement_case_from_name(std::string_view name) {
  static const std::map<std::string, ImprovementCase, std::less<>> table = {
      {"c1a", ImprovementCase::kC1a}, {"c1b", ImprovementCase::kC1b},
      {"c1c", ImprovementCase::kC1c}, {"c1d", ImprovementCase::kC1d},
      {"q2a", ImprovementCase::kQ2a}, {"q2b", ImprovementCase::kQ2b},
      {"q2c", ImprovementCase::kQ2c}, {"q2d", ImprovementCase::kQ2d},
  };
  const auto it = table.find(name);
  if (it == table.end())
    throw BadConfig("unknown improvement case '" + std::string(name) + "'");
  return it->second;
}

std::string improvement_case_name(ImprovementCase id) {
  switch (id) {
    case ImprovementCase::kC1a: return "c1a";
    case ImprovementCase::kC1b: return "c1b";
    case ImprovementCase::kC1c: return "c1c";
    case ImprovementCase::kC1d: return "c1d";
    case ImprovementCase::kQ2a: return "q2a";
    case ImprovementCase::kQ2b: return "q2b";
    case ImprovementCase::kQ2c: return "q2c";
    case ImprovementCase::kQ2d: return "q2d";
  }
  throw BadConfig("unnamed improvement case");
}

std::vector<std::string> improvement_case_names() {
  return {"c1a", "c1b", "c1c", "c1d", "q2a", "q2b", "q2c", "q2d"};
}

ImprovementResult run_improvement(ImprovementCase id,
                                  std::optional<double> epsilon) {
  const bool wants_epsilon =
      id == ImprovementCase::kC1c || id == ImprovementCase::kC1d ||
      id == ImprovementCase::kQ2c || id == ImprovementCase::kQ2d;
  if (wants_epsilon) {
    require_epsilon(epsilon, "run_improvement");
  } else if (epsilon) {
    throw BadConfig("run_improvement: this case takes no epsilon");
  }

  const OutcomeSpace bell = bell_space();
  const Matrix proj_p = quantum::bell_projector("phi+");
  const Matrix proj_m = quantum::bell_projector("phi-");

  switch (id) {
    case ImprovementCase::kC1a:
      // Stubborn Wigner consults the Friend; her report is no news to him.
      return classical::improve(ProbDist(bell, {1, 0, 0, 0}),
                                report_table(bell, vec4(0.5, 0.5, 0, 0)),
                                "report");
    case ImprovementCase::kC1b:
      return classical::improve(ProbDist(bell, {0.5, 0.5, 0, 0}),
                                report_table(bell, vec4(1, 0, 0, 0)), "report");
    case ImprovementCase::kC1c: {
      const double e = *epsilon;
      return classical::improve(ProbDist(bell, {1 - e, e, 0, 0}),
                                report_table(bell, vec4(e, 1 - e, 0, 0)),
                                "report");
    }
    case ImprovementCase::kC1d:
      // The report flags phi+ with certainty; the psi rows are outside the
      // friend's support and default to zero.
      return classical::improve(ProbDist(bell, {0.5, 0.5, 0, 0}),
                                report_table(bell, vec4(1, 0, 0, 0)), "report");
    case ImprovementCase::kQ2a:
      return quantum::quantum_improve(
          canonical_wigner_state(),
          report_likelihood(canonical_friend_state().matrix), "report");
    case ImprovementCase::kQ2b:
      return quantum::quantum_improve(canonical_friend_state(),
                                      report_likelihood(proj_p), "report");
    case ImprovementCase::kQ2c: {
      const double e = *epsilon;
      const DensityOperator open_minded(
          (1.0 - e) * proj_p + e * proj_m, "wigner_eps");
      return quantum::quantum_improve(
          open_minded, report_likelihood(e * proj_p + (1.0 - e) * proj_m),
          "report");
    }
    case ImprovementCase::kQ2d:
      return quantum::quantum_improve(canonical_friend_state(),
                                      report_likelihood(proj_p), "report");
  }
  throw BadConfig("run_improvement: unhandled case");
}

std::string sample_outcome(const ProbDist& dist, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < dist.space.size(); ++i) {
    cumulative += dist.probs(i);
    if (u < cumulative) return dist.space.labels[static_cast<std::size_t>(i)];
  }
  return dist.space.labels.back();
}

PoolMethod pool_method_from_name(std::string_view name) {
  if (name == "linear") return PoolMethod::kLinear;
  if (name == "multiplicative") return PoolMethod::kMultiplicative;
  if (name == "supra") return PoolMethod::kSupra;
  throw BadConfig("unknown pooling method '" + std::string(name) + "'");
}

ProbDist run_pooling(PoolMethod method, const std::vector<double>& weights,
                     std::optional<double> epsilon) {
  const OutcomeSpace bell = bell_space();
  if (epsilon) require_epsilon(epsilon, "run_pooling");
  const ProbDist wigner =
      epsilon ? ProbDist(bell, {1.0 - *epsilon, *epsilon, 0, 0})
              : ProbDist(bell, {1, 0, 0, 0});
  const ProbDist friend_dist(bell, {0.5, 0.5, 0, 0});

  switch (method) {
    case PoolMethod::kLinear:
      return classical::pool_linear({wigner, friend_dist}, weights);
    case PoolMethod::kMultiplicative:
      return classical::pool_multiplicative({wigner, friend_dist}, weights);
    case PoolMethod::kSupra: {
      if (!weights.empty())
        throw BadConfig("run_pooling: supra takes no weights");
      // Debbie's indifferent prior plus each agent's report likelihood.
      const ProbDist debbie(bell, {0.5, 0.5, 0, 0});
      std::vector<classical::AgentReport> reports;
      reports.push_back({report_table(bell, wigner.probs), "report"});
      reports.push_back({report_table(bell, friend_dist.probs), "report"});
      return classical::pool_supra(debbie, reports);
    }
  }
  throw BadConfig("run_pooling: unhandled method");
}

}  // namespace epiqm::scenarios
