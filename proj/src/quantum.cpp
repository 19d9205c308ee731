#include "epiqm/quantum.hpp"

#include <cmath>
#include <utility>

namespace epiqm::quantum {

namespace {

using numerics::hermitian_eig;
using numerics::is_hermitian;
using numerics::max_abs_diff;
using numerics::star_product;
using numerics::subspace_intersection_rank;
using numerics::support_projector;

constexpr Complex kI{0.0, 1.0};

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* who) {
  if (a != b)
    throw DimMismatch(std::string(who) + ": states live on different spaces (" +
                      std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

DensityOperator::DensityOperator(Matrix m, std::string label_in)
    : matrix(std::move(m)), label(std::move(label_in)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw InvalidState("DensityOperator: matrix must be square");
  if (!is_hermitian(matrix))
    throw InvalidState("DensityOperator: matrix is not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > kProbTol ||
      std::abs(matrix.trace().imag()) > kProbTol)
    throw InvalidState("DensityOperator: trace is not 1");
  const auto spec = hermitian_eig(matrix);
  if (spec.eigenvalues.minCoeff() < -kAtol)
    throw InvalidState("DensityOperator: negative eigenvalue " +
                       std::to_string(spec.eigenvalues.minCoeff()));
}

Pvm::Pvm(std::vector<std::string> labels_in, std::vector<Matrix> effects_in)
    : labels(std::move(labels_in)), effects(std::move(effects_in)) {
  if (labels.empty() || labels.size() != effects.size())
    throw InvalidState("Pvm: need one label per effect");
  const Eigen::Index d = effects.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const Matrix& e = effects[i];
    if (e.rows() != d || e.cols() != d)
      throw InvalidState("Pvm: effects have mixed dimensions");
    if (!is_hermitian(e) || max_abs_diff(e * e, e) > kRtol)
      throw InvalidState("Pvm: effect '" + labels[i] +
                         "' is not an orthogonal projector");
    for (std::size_t j = 0; j < i; ++j)
      if ((effects[j] * e).cwiseAbs().maxCoeff() > kRtol)
        throw InvalidState("Pvm: effects '" + labels[j] + "' and '" +
                           labels[i] + "' are not orthogonal");
    sum += e;
  }
  if (max_abs_diff(sum, Matrix::Identity(d, d)) > kRtol)
    throw InvalidState("Pvm: effects do not resolve the identity");
}

KrausChannel::KrausChannel(std::vector<Matrix> operators_in)
    : operators(std::move(operators_in)) {
  if (operators.empty()) throw InvalidChannel("KrausChannel: no operators");
  const Eigen::Index d = operators.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& k : operators) {
    if (k.rows() != d || k.cols() != d)
      throw InvalidChannel("KrausChannel: operators have mixed dimensions");
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, Matrix::Identity(d, d)) > kRtol)
    throw InvalidChannel("KrausChannel: operators are not trace-preserving");
}

LikelihoodOperator::LikelihoodOperator(OutcomeSpace outcomes,
                                       std::vector<Matrix> effects_in)
    : outcome_space(std::move(outcomes)), effects(std::move(effects_in)) {
  if (static_cast<Eigen::Index>(effects.size()) != outcome_space.size())
    throw InvalidState("LikelihoodOperator: need one effect per outcome");
  const Eigen::Index d = effects.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : effects) {
    if (e.rows() != d || e.cols() != d)
      throw InvalidState("LikelihoodOperator: effects have mixed dimensions");
    if (!is_hermitian(e))
      throw InvalidState("LikelihoodOperator: effect is not Hermitian");
    if (hermitian_eig(e).eigenvalues.minCoeff() < -kAtol)
      throw InvalidState("LikelihoodOperator: effect is not PSD");
    sum += e;
  }
  if (max_abs_diff(sum, Matrix::Identity(d, d)) > kRtol)
    throw InvalidState("LikelihoodOperator: effects do not sum to the identity");
}

const Matrix& LikelihoodOperator::effect(const std::string& outcome) const {
  return effects[static_cast<std::size_t>(outcome_space.index_of(outcome))];
}

HybridState::HybridState(OutcomeSpace f, OutcomeSpace w,
                         std::vector<Branch> branches_in)
    : friend_space(std::move(f)),
      wigner_space(std::move(w)),
      branches(std::move(branches_in)) {
  if (static_cast<Eigen::Index>(branches.size()) !=
      friend_space.size() * wigner_space.size())
    throw InvalidState("HybridState: need one branch per classical outcome");
  double total = 0.0;
  for (const Branch& b : branches) {
    if (b.weight < -kAtol || b.weight > 1.0 + kAtol)
      throw InvalidState("HybridState: branch weight outside [0,1]");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw InvalidState("HybridState: branch weights sum to " +
                       std::to_string(total));
}

const HybridState::Branch& HybridState::branch(Eigen::Index f,
                                               Eigen::Index w) const {
  return branches[static_cast<std::size_t>(f * wigner_space.size() + w)];
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix hadamard() {
  Matrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Matrix controlled_phase(double phi) {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = std::exp(kI * phi);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector bell_vector(const std::string& label) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  if (label == "phi+") {
    v(0) = r;
    v(3) = r;
  } else if (label == "phi-") {
    v(0) = r;
    v(3) = -r;
  } else if (label == "psi+") {
    v(1) = r;
    v(2) = r;
  } else if (label == "psi-") {
    v(1) = r;
    v(2) = -r;
  } else {
    throw UnknownLabel("bell_vector: unknown label '" + label + "'");
  }
  return v;
}

Matrix bell_projector(const std::string& label) {
  Matrix m = Matrix::Zero(4, 4);
  const bool phi = label == "phi+" || label == "phi-";
  const bool psi = label == "psi+" || label == "psi-";
  if (!phi && !psi)
    throw UnknownLabel("bell_projector: unknown label '" + label + "'");
  const double off = (label == "phi+" || label == "psi+") ? 0.5 : -0.5;
  const Eigen::Index a = phi ? 0 : 1;
  const Eigen::Index b = phi ? 3 : 2;
  m(a, a) = 0.5;
  m(b, b) = 0.5;
  m(a, b) = off;
  m(b, a) = off;
  return m;
}

Pvm bell_pvm() {
  std::vector<std::string> labels{"phi+", "phi-", "psi+", "psi-"};
  std::vector<Matrix> effects;
  effects.reserve(labels.size());
  for (const auto& l : labels) effects.push_back(bell_projector(l));
  return Pvm(std::move(labels), std::move(effects));
}

Pvm computational_pvm(Eigen::Index dim) {
  std::vector<std::string> labels;
  std::vector<Matrix> effects;
  for (Eigen::Index i = 0; i < dim; ++i) {
    labels.push_back(std::to_string(i));
    Matrix e = Matrix::Zero(dim, dim);
    e(i, i) = 1;
    effects.push_back(std::move(e));
  }
  return Pvm(std::move(labels), std::move(effects));
}

DensityOperator pure_state(const Vector& psi, std::string label) {
  const double norm = psi.norm();
  if (norm <= kAtol) throw InvalidState("pure_state: zero vector");
  const Vector unit = psi / norm;
  return DensityOperator(unit * unit.adjoint(), std::move(label));
}

KrausChannel benefit_of_doubt_channel(double epsilon) {
  if (epsilon <= kEpsilonMin || epsilon >= kEpsilonMax)
    throw BadConfig("benefit_of_doubt_channel: epsilon must lie in (" +
                    std::to_string(kEpsilonMin) + ", 0.5)");
  const Matrix one = identity(2);
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(1.0 - epsilon) * kron(one, one));
  ops.push_back(std::sqrt(epsilon) * kron(pauli_z(), one));
  return KrausChannel(std::move(ops));
}

ProbDist born_probabilities(const DensityOperator& state, const Pvm& pvm) {
  require_same_dim(state.dim(), pvm.dim(), "born_probabilities");
  Eigen::VectorXd probs(static_cast<Eigen::Index>(pvm.effects.size()));
  for (std::size_t i = 0; i < pvm.effects.size(); ++i)
    probs(static_cast<Eigen::Index>(i)) =
        (pvm.effects[i] * state.matrix).trace().real();
  return ProbDist(pvm.outcome_space(), std::move(probs));
}

DensityOperator evolve_unitary(const DensityOperator& state, const Matrix& u) {
  require_same_dim(state.dim(), u.rows(), "evolve_unitary");
  if (max_abs_diff(u * u.adjoint(), identity(u.rows())) > kRtol)
    throw NotUnitary("evolve_unitary: operator is not unitary");
  return DensityOperator(hermitize(u * state.matrix * u.adjoint()), state.label);
}

DensityOperator evolve_channel(const DensityOperator& state,
                               const KrausChannel& channel) {
  require_same_dim(state.dim(), channel.dim(), "evolve_channel");
  Matrix out = Matrix::Zero(state.dim(), state.dim());
  for (const Matrix& k : channel.operators) out += k * state.matrix * k.adjoint();
  return DensityOperator(hermitize(out), state.label);
}

bool quantum_compatible(const DensityOperator& a, const DensityOperator& b,
                        double tol) {
  require_same_dim(a.dim(), b.dim(), "quantum_compatible");
  const Matrix pa = support_projector(a.matrix, tol);
  const Matrix pb = support_projector(b.matrix, tol);
  return subspace_intersection_rank(pa, pb) >= 1;
}

bool quantum_agree(const std::vector<DensityOperator>& states) {
  for (std::size_t i = 1; i < states.size(); ++i) {
    require_same_dim(states[0].dim(), states[i].dim(), "quantum_agree");
    if (max_abs_diff(states[0].matrix, states[i].matrix) > kProbTol)
      return false;
  }
  return true;
}

LikelihoodOperator projective_likelihood(const DensityOperator& target) {
  const double purity = (target.matrix * target.matrix).trace().real();
  if (std::abs(purity - 1.0) > kRtol)
    throw NotPure("projective_likelihood: target is not a rank-1 state");
  std::vector<Matrix> effects{target.matrix,
                              identity(target.dim()) - target.matrix};
  return LikelihoodOperator(classical::binary_space(), std::move(effects));
}

DensityOperator quantum_bayes_update(const DensityOperator& prior,
                                     const LikelihoodOperator& lik,
                                     const std::string& observed) {
  require_same_dim(prior.dim(), lik.dim(), "quantum_bayes_update");
  const Matrix& effect = lik.effect(observed);
  const double evidence = (effect * prior.matrix).trace().real();
  if (evidence <= kAtol)
    throw ZeroEvidence("quantum_bayes_update: outcome '" + observed +
                       "' is impossible under this prior");
  Matrix post = star_product(effect, prior.matrix);
  post /= post.trace().real();
  return DensityOperator(hermitize(post));
}

DensityOperator quantum_improve(const DensityOperator& prior,
                                const LikelihoodOperator& report_lik,
                                const std::string& report) {
  return quantum_bayes_update(prior, report_lik, report);
}

HybridState construct_hybrid_joint(const DensityOperator& friend_state,
                                   const DensityOperator& wigner_state) {
  require_same_dim(friend_state.dim(), wigner_state.dim(),
                   "construct_hybrid_joint");
  const Eigen::Index d = friend_state.dim();
  const Matrix p_friend = support_projector(friend_state.matrix);
  const Matrix p_wigner = support_projector(wigner_state.matrix);
  if (subspace_intersection_rank(p_friend, p_wigner) < 1)
    throw Incompatible("construct_hybrid_joint: supports do not intersect");
  if (((identity(d) - p_friend) * p_wigner).cwiseAbs().maxCoeff() > kRtol)
    throw UnsupportedDecomposition(
        "construct_hybrid_joint: wigner state is not dominated by the friend "
        "state's support");

  // Largest p with friend - p * wigner still PSD, via the pseudo-inverse
  // square root of the friend state on its own support.
  const auto spec = hermitian_eig(friend_state.matrix);
  Matrix inv_root = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j)
    if (spec.eigenvalues(j) > kSupportTol)
      inv_root += spec.eigenvectors.col(j) * spec.eigenvectors.col(j).adjoint() /
                  std::sqrt(spec.eigenvalues(j));
  const auto ratio = hermitian_eig(
      hermitize(inv_root * wigner_state.matrix * inv_root));
  const double lam_max = ratio.eigenvalues(0);
  if (lam_max <= kAtol)
    throw UnsupportedDecomposition(
        "construct_hybrid_joint: degenerate decomposition");
  const double p = std::clamp(1.0 / lam_max, 0.0, 1.0);

  const DensityOperator filler(identity(d) / static_cast<double>(d));
  std::vector<HybridState::Branch> branches(4);
  branches[0] = {p, wigner_state, false};  // F=0, W=0: the common part
  if (1.0 - p <= kProbTol) {
    branches[0].weight = 1.0;
    branches[1] = {0.0, filler, true};  // F=0, W=1
  } else {
    const Matrix eta = hermitize(
        (friend_state.matrix - p * wigner_state.matrix) / (1.0 - p));
    branches[1] = {1.0 - p, DensityOperator(eta), false};
  }
  branches[2] = {0.0, filler, true};  // F=1, W=0
  branches[3] = {0.0, filler, true};  // F=1, W=1
  return HybridState(classical::binary_space(), classical::binary_space(),
                     std::move(branches));
}

DensityOperator hybrid_condition(const HybridState& hybrid, HybridVar which,
                                 const std::string& value) {
  const OutcomeSpace& space = which == HybridVar::kFriend
                                  ? hybrid.friend_space
                                  : hybrid.wigner_space;
  const Eigen::Index want = space.index_of(value);

  const Eigen::Index d = hybrid.branches.front().state.dim();
  Matrix mix = Matrix::Zero(d, d);
  double marginal = 0.0;
  for (Eigen::Index f = 0; f < hybrid.friend_space.size(); ++f) {
    for (Eigen::Index w = 0; w < hybrid.wigner_space.size(); ++w) {
      const Eigen::Index v = which == HybridVar::kFriend ? f : w;
      if (v != want) continue;
      const auto& b = hybrid.branch(f, w);
      mix += b.weight * b.state.matrix;
      marginal += b.weight;
    }
  }
  if (marginal <= kAtol)
    throw ZeroEvidence("hybrid_condition: conditioning event has no mass");
  return DensityOperator(hermitize(mix / marginal));
}

DensityOperator diagonal_embedding(const ProbDist& dist) {
  Matrix m = Matrix::Zero(dist.probs.size(), dist.probs.size());
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i) m(i, i) = dist.probs(i);
  return DensityOperator(std::move(m));
}

}  // namespace epiqm::quantum
