#pragma once

#include <string>
#include <vector>

#include "epiqm/classical.hpp"
#include "epiqm/numerics.hpp"

namespace epiqm::quantum {

using classical::OutcomeSpace;
using classical::ProbDist;
using numerics::Complex;
using numerics::Matrix;
using numerics::Vector;

// An agent's quantum assignment: Hermitian, positive semidefinite, unit
// trace. The label is free-form presentation metadata.
struct DensityOperator {
  Matrix matrix;
  std::string label;

  DensityOperator() = default;
  explicit DensityOperator(Matrix m, std::string label_in = "");

  Eigen::Index dim() const { return matrix.rows(); }
};

// Projection-valued measure: orthogonal projectors resolving the identity.
struct Pvm {
  std::vector<std::string> labels;
  std::vector<Matrix> effects;

  Pvm(std::vector<std::string> labels_in, std::vector<Matrix> effects_in);

  Eigen::Index dim() const { return effects.front().rows(); }
  OutcomeSpace outcome_space() const { return OutcomeSpace(labels); }
};

// Completely positive trace-preserving map in Kraus form.
struct KrausChannel {
  std::vector<Matrix> operators;

  explicit KrausChannel(std::vector<Matrix> operators_in);

  Eigen::Index dim() const { return operators.front().rows(); }
};

// Outcome-indexed family of PSD effects summing to the identity; the hybrid
// conditional state of a classical test on a quantum region.
struct LikelihoodOperator {
  OutcomeSpace outcome_space;
  std::vector<Matrix> effects;

  LikelihoodOperator(OutcomeSpace outcomes, std::vector<Matrix> effects_in);

  Eigen::Index dim() const { return effects.front().rows(); }
  const Matrix& effect(const std::string& outcome) const;
};

// Classical-outcome-indexed ensemble of weighted density operators over the
// two binary registers F and W. Zero-weight branches are placeholders and
// excluded from equality considerations.
struct HybridState {
  struct Branch {
    double weight = 0.0;
    DensityOperator state;
    bool placeholder = false;
  };

  OutcomeSpace friend_space;  // {"0","1"}
  OutcomeSpace wigner_space;  // {"0","1"}
  std::vector<Branch> branches;  // row-major over friend x wigner

  HybridState(OutcomeSpace f, OutcomeSpace w, std::vector<Branch> branches_in);

  const Branch& branch(Eigen::Index f, Eigen::Index w) const;
};

enum class HybridVar { kFriend, kWigner };

// ── two-qubit toolbox ────────────────────────────────────────────────────
Matrix identity(Eigen::Index dim);
Matrix hadamard();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix cnot();  // control on the system qubit, basis |00>,|01>,|10>,|11>
Matrix controlled_phase(double phi);  // diag(1, 1, 1, e^{i phi})
Matrix kron(const Matrix& a, const Matrix& b);

Vector bell_vector(const std::string& label);  // "phi+","phi-","psi+","psi-"

// |bell><bell| with exactly representable entries (0 and +-1/2), so the
// canonical statistics come out free of floating-point dust.
Matrix bell_projector(const std::string& label);
Pvm bell_pvm();
Pvm computational_pvm(Eigen::Index dim);
DensityOperator pure_state(const Vector& psi, std::string label = "");

// kappa_0 = sqrt(1-eps) 1x1, kappa_1 = sqrt(eps) sigma_z x 1: leaks a little
// phase-flip doubt into an otherwise certain preparation.
KrausChannel benefit_of_doubt_channel(double epsilon);

// ── operations ───────────────────────────────────────────────────────────
ProbDist born_probabilities(const DensityOperator& state, const Pvm& pvm);
DensityOperator evolve_unitary(const DensityOperator& state, const Matrix& u);
DensityOperator evolve_channel(const DensityOperator& state,
                               const KrausChannel& channel);

// Non-trivial intersection of supports. States of different dimension are
// not comparable: DimMismatch.
bool quantum_compatible(const DensityOperator& a, const DensityOperator& b,
                        double tol = kSupportTol);

// Exact coincidence of all assignments, entrywise to kProbTol.
bool quantum_agree(const std::vector<DensityOperator>& states);

// The binary experiment "is the system in the target state?": effect
// |psi><psi| for outcome "0" and its complement for outcome "1".
LikelihoodOperator projective_likelihood(const DensityOperator& target);

// Quantum Bayes' theorem through the star product:
// posterior = (effect * prior) / Tr(effect * prior).
DensityOperator quantum_bayes_update(const DensityOperator& prior,
                                     const LikelihoodOperator& lik,
                                     const std::string& observed);

// State improvement: same update rule, with the observed variable being the
// expert's announced assignment.
DensityOperator quantum_improve(const DensityOperator& prior,
                                const LikelihoodOperator& report_lik,
                                const std::string& report);

// Objectivist "virtual past" for quantum agents: branches carry
// P(F=f,W=w) together with the conditional state, such that conditioning on
// F=0 recovers the friend state and on W=0 the wigner state. Requires the
// wigner state to live inside the friend state's support.
HybridState construct_hybrid_joint(const DensityOperator& friend_state,
                                   const DensityOperator& wigner_state);

DensityOperator hybrid_condition(const HybridState& hybrid, HybridVar which,
                                 const std::string& value);

// A classical assignment as a diagonal operator on its outcome register.
DensityOperator diagonal_embedding(const ProbDist& dist);

// Note: there is deliberately no pooling of density operators here. The
// weighted product of noncommuting states has no canonical ordering, so
// belief fusion stays on the classical side (see classical::pool_*).

}  // namespace epiqm::quantum
