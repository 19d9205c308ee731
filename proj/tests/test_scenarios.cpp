#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "epiqm/scenarios.hpp"
#include "helpers.hpp"

using namespace epiqm;
using namespace epiqm::scenarios;
using epiqm::testing::max_abs;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScenarioConfig config(Variant v) {
  ScenarioConfig cfg;
  cfg.variant = v;
  return cfg;
}

bool dist_close(const classical::ProbDist& d, std::initializer_list<double> want,
                double tol = 1e-9) {
  Eigen::Index i = 0;
  for (double w : want)
    if (std::abs(d.probs(i++) - w) > tol) return false;
  return true;
}

std::set<std::string> support_set(const classical::ProbDist& d) {
  const auto labels = classical::support(d);
  return {labels.begin(), labels.end()};
}

}  // namespace

TEST_CASE("canonical scenario: both verdicts compatible, worked statistics") {
  const auto res = run_scenario(config(Variant::kCanonical));
  CHECK(dist_close(res.wigner_dist, {1, 0, 0, 0}));
  CHECK(dist_close(res.friend_dist, {0.5, 0.5, 0, 0}));
  CHECK(res.classical_compatible == Verdict::kCompatible);
  CHECK(res.quantum_compatible == Verdict::kCompatible);

  // the cataloged state is what the preparation circuit produces
  REQUIRE(res.wigner_state);
  quantum::Vector k00 = quantum::Vector::Zero(4);
  k00(0) = 1.0;
  const auto circuit = quantum::evolve_unitary(
      quantum::pure_state(k00),
      quantum::cnot() * quantum::kron(quantum::hadamard(), quantum::identity(2)));
  CHECK(max_abs(res.wigner_state->matrix - circuit.matrix) < 1e-12);
}

TEST_CASE("wrong initial state: disjoint supports, incompatible") {
  const auto res = run_scenario(config(Variant::kWrongInitial));
  CHECK(dist_close(res.wigner_dist, {0, 0, 0, 1}));
  CHECK(dist_close(res.friend_dist, {0.5, 0.5, 0, 0}));
  CHECK(res.classical_compatible == Verdict::kIncompatible);
  CHECK(res.quantum_compatible == Verdict::kIncompatible);
}

TEST_CASE("not gate: wigner lands on |11>, cataloged as incompatible") {
  const auto res = run_scenario(config(Variant::kNotGate));
  REQUIRE(res.wigner_state);
  quantum::Matrix want = quantum::Matrix::Zero(4, 4);
  want(3, 3) = 1.0;
  CHECK(max_abs(res.wigner_state->matrix - want) < 1e-12);
  CHECK(res.classical_compatible == Verdict::kIncompatible);
  CHECK(res.quantum_compatible == Verdict::kIncompatible);
}

TEST_CASE("time evolution sweeps between coincidence and disjointness") {
  for (int k = 0; k < 100; ++k) {
    const double omega_t = 2.0 * kPi * k / 100.0;
    auto cfg = config(Variant::kTimeEvolution);
    cfg.omega_t = omega_t;
    const auto res = run_scenario(cfg);
    const double c = std::cos(omega_t);
    CHECK(dist_close(res.wigner_dist,
                     {(1 + c) / 4, (1 + c) / 4, (1 - c) / 4, (1 - c) / 4}));
    CHECK(res.quantum_compatible == Verdict::kNotApplicable);
    CHECK_FALSE(res.friend_state.has_value());
  }

  auto at = [&](double omega_t) {
    auto cfg = config(Variant::kTimeEvolution);
    cfg.omega_t = omega_t;
    return run_scenario(cfg);
  };
  const auto frozen = at(0.0);
  CHECK(frozen.classical_compatible == Verdict::kCompatible);
  CHECK(classical::agree({frozen.wigner_dist, frozen.friend_dist}));
  CHECK(at(kPi / 2).classical_compatible == Verdict::kCompatible);
  CHECK(at(kPi).classical_compatible == Verdict::kIncompatible);
}

TEST_CASE("phase scenario stays compatible for every phase") {
  for (int k = 0; k < 100; ++k) {
    const double phi = 2.0 * kPi * k / 100.0;
    auto cfg = config(Variant::kPhase);
    cfg.phi = phi;
    const auto res = run_scenario(cfg);
    const double c = std::cos(phi);
    CHECK(dist_close(res.wigner_dist, {(1 + c) / 2, (1 - c) / 2, 0, 0}));
    CHECK(res.classical_compatible == Verdict::kCompatible);
    CHECK(res.quantum_compatible == Verdict::kCompatible);
  }
  auto cfg = config(Variant::kPhase);
  cfg.phi = kPi;
  CHECK(dist_close(run_scenario(cfg).wigner_dist, {0, 1, 0, 0}));
}

TEST_CASE("two wigners at (0, pi): compatibility is not transitive") {
  auto cfg = config(Variant::kTwoWigners);
  cfg.phi_left = 0.0;
  cfg.phi_right = kPi;
  const auto res = run_scenario(cfg);
  CHECK(dist_close(res.wigner_dist, {1, 0, 0, 0}));
  REQUIRE(res.two_wigners);
  CHECK(dist_close(res.two_wigners->right_dist, {0, 1, 0, 0}));
  CHECK(res.classical_compatible == Verdict::kCompatible);
  CHECK(res.two_wigners->right_vs_friend_classical == Verdict::kCompatible);
  CHECK(res.two_wigners->left_vs_right_classical == Verdict::kIncompatible);
  CHECK(res.quantum_compatible == Verdict::kCompatible);
  CHECK(res.two_wigners->right_vs_friend_quantum == Verdict::kCompatible);
  CHECK(res.two_wigners->left_vs_right_quantum == Verdict::kIncompatible);
}

TEST_CASE("benefit of the doubt: supports coincide for every valid epsilon") {
  for (double eps : {0.01, 0.1, 0.3, 0.4999, 2e-6}) {
    auto cfg = config(Variant::kBenefitOfDoubt);
    cfg.epsilon = eps;
    const auto res = run_scenario(cfg);
    CHECK(dist_close(res.wigner_dist, {1 - eps, eps, 0, 0}));
    CHECK(support_set(res.wigner_dist) == support_set(res.friend_dist));
    CHECK(res.classical_compatible == Verdict::kCompatible);
    CHECK(res.quantum_compatible == Verdict::kCompatible);
  }
}

TEST_CASE("ignorant wigner: different object, incomparable") {
  const auto res = run_scenario(config(Variant::kIgnorantWigner));
  CHECK(res.wigner_dist.space.size() == 2);
  CHECK(dist_close(res.wigner_dist, {0.5, 0.5}));
  CHECK_FALSE(res.wigner_state.has_value());
  CHECK(res.classical_compatible == Verdict::kIncomparable);
  CHECK(res.quantum_compatible == Verdict::kNotApplicable);
}

TEST_CASE("catalog distributions equal the born statistics of their states") {
  std::vector<ScenarioConfig> configs{
      config(Variant::kCanonical), config(Variant::kWrongInitial),
      config(Variant::kNotGate), config(Variant::kIgnorantWigner)};
  {
    auto cfg = config(Variant::kTimeEvolution);
    cfg.omega_t = 1.234;
    configs.push_back(cfg);
    cfg = config(Variant::kPhase);
    cfg.phi = 2.345;
    configs.push_back(cfg);
    cfg = config(Variant::kTwoWigners);
    cfg.phi_left = 0.5;
    cfg.phi_right = 4.0;
    configs.push_back(cfg);
    cfg = config(Variant::kBenefitOfDoubt);
    cfg.epsilon = 0.07;
    configs.push_back(cfg);
  }
  const auto pvm = quantum::bell_pvm();
  for (const auto& cfg : configs) {
    const auto res = run_scenario(cfg);
    if (res.wigner_state) {
      const auto probs = quantum::born_probabilities(*res.wigner_state, pvm);
      CHECK((probs.probs - res.wigner_dist.probs).cwiseAbs().maxCoeff() <= 1e-9);
    }
    if (res.friend_state) {
      const auto probs = quantum::born_probabilities(*res.friend_state, pvm);
      CHECK((probs.probs - res.friend_dist.probs).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("scenario parameter validation is strict") {
  CHECK_THROWS_AS(run_scenario(config(Variant::kTimeEvolution)), BadConfig);
  CHECK_THROWS_AS(run_scenario(config(Variant::kPhase)), BadConfig);
  auto cfg = config(Variant::kCanonical);
  cfg.phi = 1.0;
  CHECK_THROWS_AS(run_scenario(cfg), BadConfig);
  auto doubt = config(Variant::kBenefitOfDoubt);
  doubt.epsilon = 0.7;
  CHECK_THROWS_AS(run_scenario(doubt), BadConfig);
  doubt.epsilon = 1e-9;
  CHECK_THROWS_AS(run_scenario(doubt), BadConfig);
  CHECK_THROWS_AS(variant_from_name("bogus"), BadConfig);
  CHECK(variant_from_name("canonical") == Variant::kCanonical);
}

TEST_CASE("classical reconciliation: agreement on 0, cromwell block on 1") {
  const auto on_zero =
      run_reconciliation(config(Variant::kCanonical), Mode::kClassical, "0");
  REQUIRE(on_zero.wigner_dist);
  REQUIRE(on_zero.friend_dist);
  CHECK(dist_close(*on_zero.wigner_dist, {1, 0, 0, 0}));
  CHECK(dist_close(*on_zero.friend_dist, {1, 0, 0, 0}));
  CHECK(on_zero.common_label == "phi+");

  const auto on_one =
      run_reconciliation(config(Variant::kCanonical), Mode::kClassical, "1");
  CHECK_FALSE(on_one.wigner_dist.has_value());
  REQUIRE(on_one.friend_dist);
  CHECK(dist_close(*on_one.friend_dist, {0, 1, 0, 0}));
}

TEST_CASE("quantum reconciliation: agreement on 0, cromwell block on 1") {
  const auto phi_plus = quantum::bell_vector("phi+");
  const auto phi_minus = quantum::bell_vector("phi-");

  const auto on_zero =
      run_reconciliation(config(Variant::kCanonical), Mode::kQuantum, "0");
  REQUIRE(on_zero.wigner_state);
  REQUIRE(on_zero.friend_state);
  CHECK(max_abs(on_zero.wigner_state->matrix - phi_plus * phi_plus.adjoint()) <=
        1e-9);
  CHECK(max_abs(on_zero.friend_state->matrix - phi_plus * phi_plus.adjoint()) <=
        1e-9);
  CHECK(quantum::quantum_agree({*on_zero.wigner_state, *on_zero.friend_state}));

  const auto on_one =
      run_reconciliation(config(Variant::kCanonical), Mode::kQuantum, "1");
  CHECK_FALSE(on_one.wigner_state.has_value());
  REQUIRE(on_one.friend_state);
  CHECK(max_abs(on_one.friend_state->matrix - phi_minus * phi_minus.adjoint()) <=
        1e-9);
}

TEST_CASE("reconciliation needs compatible assignments and a quantum pair") {
  CHECK_THROWS_AS(
      run_reconciliation(config(Variant::kWrongInitial), Mode::kClassical, "0"),
      Incompatible);
  CHECK_THROWS_AS(
      run_reconciliation(config(Variant::kIgnorantWigner), Mode::kClassical, "0"),
      SpaceMismatch);
  auto cfg = config(Variant::kTimeEvolution);
  cfg.omega_t = 0.0;
  CHECK_THROWS_AS(run_reconciliation(cfg, Mode::kQuantum, "0"), BadConfig);

  // identical priors: the posterior is the first common support point
  const auto degenerate = run_reconciliation(cfg, Mode::kClassical, "0");
  REQUIRE(degenerate.wigner_dist);
  REQUIRE(degenerate.friend_dist);
  CHECK(classical::agree({*degenerate.wigner_dist, *degenerate.friend_dist}));
  CHECK(degenerate.wigner_dist->at("phi+") == doctest::Approx(1.0));
}

TEST_CASE("the eight improvement cases land on their fixed outcomes") {
  const auto phi_plus = quantum::bell_vector("phi+");
  const quantum::Matrix proj_plus = phi_plus * phi_plus.adjoint();
  const auto sigma_f = canonical_friend_state();

  for (double eps : {0.01, 0.1, 0.3}) {
    const auto c1a = std::get<classical::ProbDist>(
        run_improvement(ImprovementCase::kC1a));
    CHECK(dist_close(c1a, {1, 0, 0, 0}));
    const auto c1b = std::get<classical::ProbDist>(
        run_improvement(ImprovementCase::kC1b));
    CHECK(dist_close(c1b, {1, 0, 0, 0}));
    const auto c1c = std::get<classical::ProbDist>(
        run_improvement(ImprovementCase::kC1c, eps));
    CHECK(dist_close(c1c, {0.5, 0.5, 0, 0}));
    const auto c1d = std::get<classical::ProbDist>(
        run_improvement(ImprovementCase::kC1d, eps));
    CHECK(dist_close(c1d, {1, 0, 0, 0}));

    const auto q2a = std::get<quantum::DensityOperator>(
        run_improvement(ImprovementCase::kQ2a));
    CHECK(max_abs(q2a.matrix - proj_plus) <= 1e-9);
    const auto q2b = std::get<quantum::DensityOperator>(
        run_improvement(ImprovementCase::kQ2b));
    CHECK(max_abs(q2b.matrix - proj_plus) <= 1e-9);
    const auto q2c = std::get<quantum::DensityOperator>(
        run_improvement(ImprovementCase::kQ2c, eps));
    CHECK(max_abs(q2c.matrix - sigma_f.matrix) <= 1e-9);
    const auto q2d = std::get<quantum::DensityOperator>(
        run_improvement(ImprovementCase::kQ2d, eps));
    CHECK(max_abs(q2d.matrix - proj_plus) <= 1e-9);
  }
}

TEST_CASE("improvement epsilon handling is strict") {
  CHECK_THROWS_AS(run_improvement(ImprovementCase::kC1c), BadConfig);
  CHECK_THROWS_AS(run_improvement(ImprovementCase::kQ2c), BadConfig);
  CHECK_THROWS_AS(run_improvement(ImprovementCase::kC1a, 0.1), BadConfig);
  CHECK_THROWS_AS(run_improvement(ImprovementCase::kC1c, 0.6), BadConfig);
  CHECK_THROWS_AS(improvement_case_from_name("c9z"), BadConfig);
}

TEST_CASE("pooling wrappers reproduce the worked fusions") {
  CHECK(dist_close(run_pooling(PoolMethod::kSupra), {1, 0, 0, 0}));
  CHECK(dist_close(run_pooling(PoolMethod::kLinear, {0.5, 0.5}),
                   {0.75, 0.25, 0, 0}));
  CHECK(dist_close(run_pooling(PoolMethod::kLinear, {0.1, 0.9}),
                   {0.55, 0.45, 0, 0}));
  CHECK(dist_close(run_pooling(PoolMethod::kMultiplicative, {0.5, 0.5}),
                   {1, 0, 0, 0}));
  CHECK_THROWS_AS(run_pooling(PoolMethod::kSupra, {0.5, 0.5}), BadConfig);
  CHECK_THROWS_AS(run_pooling(PoolMethod::kLinear, {0.5, 0.6}), BadWeights);
  CHECK_THROWS_AS(pool_method_from_name("geometric"), BadConfig);

  // with the benefit of the doubt, linear pooling shifts accordingly
  const auto doubted = run_pooling(PoolMethod::kLinear, {0.5, 0.5}, 0.1);
  CHECK(dist_close(doubted, {0.7, 0.3, 0, 0}));
}

TEST_CASE("the demo sampler is seeded, deterministic, and support-true") {
  const auto friendly = canonical_friend_dist();
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const auto label = sample_outcome(friendly, seed);
    CHECK(sample_outcome(friendly, seed) == label);
    CHECK((label == "phi+" || label == "phi-"));
  }
  const auto certain = canonical_wigner_dist();
  for (std::uint64_t seed = 0; seed < 16; ++seed)
    CHECK(sample_outcome(certain, seed) == "phi+");
}
