#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <random>
#include <vector>

#include "epiqm/classical.hpp"
#include "epiqm/numerics.hpp"
#include "epiqm/quantum.hpp"

namespace epiqm::testing {

using numerics::Complex;
using numerics::Matrix;
using numerics::Vector;

inline Matrix random_gaussian(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  return g;
}

inline Matrix random_hermitian(Eigen::Index n, std::mt19937& rng) {
  const Matrix g = random_gaussian(n, rng);
  return 0.5 * (g + g.adjoint());
}

// PSD with the requested rank (full rank when rank <= 0).
inline Matrix random_psd(Eigen::Index n, std::mt19937& rng,
                         Eigen::Index rank = 0) {
  if (rank <= 0 || rank > n) rank = n;
  const Matrix g = random_gaussian(n, rng).leftCols(rank);
  return g * g.adjoint();
}

inline quantum::DensityOperator random_density(Eigen::Index n, std::mt19937& rng,
                                               Eigen::Index rank = 0) {
  Matrix m = random_psd(n, rng, rank);
  m /= m.trace().real();
  return quantum::DensityOperator(0.5 * (m + m.adjoint()));
}

inline Matrix random_unitary(Eigen::Index n, std::mt19937& rng) {
  const Eigen::HouseholderQR<Matrix> qr(random_gaussian(n, rng));
  return qr.householderQ();
}

// Masses on the given support mask, at least 0.05 per live outcome so support
// membership is unambiguous at any reasonable tolerance.
inline classical::ProbDist random_dist(const classical::OutcomeSpace& space,
                                       std::mt19937& rng,
                                       const std::vector<bool>& mask) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(space.size());
  for (Eigen::Index i = 0; i < space.size(); ++i)
    if (mask[static_cast<std::size_t>(i)]) p(i) = unif(rng);
  return classical::ProbDist(space, p / p.sum());
}

inline std::vector<bool> random_mask(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<bool> mask(n, false);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = coin(rng) == 1;
    any = any || mask[i];
  }
  if (!any) mask[static_cast<std::size_t>(rng() % n)] = true;
  return mask;
}

// Independent eigendecomposition path for oracle checks.
inline Matrix eigen_solver_sqrt(const Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  Eigen::VectorXd lam = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * lam.asDiagonal() *
         solver.eigenvectors().adjoint();
}

// Intersection dimension of two projector ranges from the singular values of
// the cross-Gram matrix of orthonormal bases: one count per singular value 1.
inline Eigen::Index gram_intersection_rank(const Matrix& p, const Matrix& q,
                                           double tol = 1e-8) {
  const auto basis = [&](const Matrix& proj) {
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(proj);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      if (solver.eigenvalues()(i) > 0.5) keep.push_back(i);
    Matrix b(proj.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
      b.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(keep[k]);
    return b;
  };
  const Matrix bp = basis(p);
  const Matrix bq = basis(q);
  if (bp.cols() == 0 || bq.cols() == 0) return 0;
  const Eigen::JacobiSVD<Matrix> svd(bp.adjoint() * bq);
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1.0 - tol) ++count;
  return count;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace epiqm::testing
