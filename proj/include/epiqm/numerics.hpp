#pragma once

#include <Eigen/Dense>
#include <complex>

#include "epiqm/errors.hpp"
#include "epiqm/tolerances.hpp"

namespace epiqm::numerics {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
// descending, eigenvectors as matching orthonormal columns. The global phase
// of each column is fixed by rotating its largest-magnitude component onto
// the positive real axis, so repeated runs produce identical output.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;

  // V * diag(eigenvalues) * V^dagger
  Matrix reconstruct() const;
};

bool is_hermitian(const Matrix& m, double atol = kAtol);

// Largest entrywise |a - b|; dimensions must already agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

// Cyclic complex Jacobi diagonalization. Deterministic sweep order
// (row-cyclic, upper triangle), quadratically convergent at these sizes.
Spectrum hermitian_eig(const Matrix& m);

// Principal square root of a positive semidefinite matrix. Eigenvalues in
// [-kAtol, 0) are treated as rounding noise and clamped to zero; anything
// lower throws NotPsd.
Matrix psd_sqrt(const Matrix& m);

// n^{1/2} * m * n^{1/2}, the noncommutative Bayes-update kernel. Hermitian
// whenever m is.
Matrix star_product(const Matrix& m, const Matrix& n);

// Orthogonal projector onto the span of eigenvectors with eigenvalue > tol.
Matrix support_projector(const Matrix& m, double tol = kSupportTol);

// Dimension of range(p) intersected with range(q), read off as the
// multiplicity of eigenvalue 2 in p + q.
Eigen::Index subspace_intersection_rank(const Matrix& p, const Matrix& q,
                                        double tol = kIntersectionTol);

}  // namespace epiqm::numerics
