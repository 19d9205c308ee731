#include "epiqm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace epiqm::numerics {

namespace {

double offdiag_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = 0; q < a.cols(); ++q)
      if (p != q) sum += std::norm(a(p, q));
  return std::sqrt(sum);
}

// Unitary 2x2 rotation annihilating a(p,q) of a Hermitian matrix, applied in
// place to a and accumulated into v. Stable small-angle Jacobi tangent.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex gamma = a(p, q);
  const double r = std::abs(gamma);
  if (r == 0.0) return;

  const Complex phase = gamma / r;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();
  const double tau = (beta - alpha) / (2.0 * r);
  const double sign = tau >= 0.0 ? 1.0 : -1.0;
  // smaller-magnitude root of t^2 - 2*tau*t - 1 = 0
  const double t = -sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const Complex s = t * c * std::conj(phase);  // column rotation coefficient
  const Complex sbar = std::conj(s);

  const Eigen::Index n = a.rows();
  // a <- a * V with V = [[c, -conj(s)], [s, c]] on columns (p, q)
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + s * akq;
    a(k, q) = -sbar * akp + c * akq;
  }
  // a <- V^dagger * a on rows (p, q)
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + sbar * aqk;
    a(q, k) = -s * apk + c * aqk;
  }
  a(p, q) = Complex(0.0, 0.0);
  a(q, p) = Complex(0.0, 0.0);
  a(p, p) = Complex(a(p, p).real(), 0.0);
  a(q, q) = Complex(a(q, q).real(), 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp + s * vkq;
    v(k, q) = -sbar * vkp + c * vkq;
  }
}

// Rotate each column's largest-magnitude component onto the positive real
// axis; ties resolve to the lowest index.
void fix_phases(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index best = 0;
    double best_mag = std::abs(v(0, j));
    for (Eigen::Index i = 1; i < v.rows(); ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag > 0.0) v.col(j) *= std::conj(v(best, j)) / best_mag;
  }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimMismatch(std::string(who) + ": matrix must be square and non-empty");
}

}  // namespace

Matrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() *
         eigenvectors.adjoint();
}

bool is_hermitian(const Matrix& m, double atol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= atol;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Spectrum hermitian_eig(const Matrix& m) {
  require_square(m, "hermitian_eig");
  if (!is_hermitian(m))
    throw NotHermitian("hermitian_eig: input is not Hermitian within tolerance");

  const Eigen::Index n = m.rows();
  Matrix a = hermitize(m);
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(a.norm(), 1.0);
  const double stop = scale * 1e-15 * static_cast<double>(n);
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a) <= stop) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = a(order[static_cast<std::size_t>(j)],
                           order[static_cast<std::size_t>(j)]).real();
    out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  fix_phases(out.eigenvectors);
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  const Spectrum s = hermitian_eig(m);
  Eigen::VectorXd lam = s.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -kAtol)
      throw NotPsd("psd_sqrt: eigenvalue " + std::to_string(lam(i)) +
                   " below tolerance");
    // |lam| <= kAtol is rounding noise; sqrt would amplify it to ~1e-8 and
    // leak outside the genuine support, so it maps to exactly zero.
    lam(i) = lam(i) <= kAtol ? 0.0 : std::sqrt(lam(i));
  }
  return hermitize(s.eigenvectors * lam.asDiagonal() * s.eigenvectors.adjoint());
}

Matrix star_product(const Matrix& m, const Matrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols())
    throw DimMismatch("star_product: operand dimensions differ");
  if (!is_hermitian(m))
    throw NotHermitian("star_product: left operand is not Hermitian");
  const Matrix root = psd_sqrt(n);
  return hermitize(root * m * root);
}

Matrix support_projector(const Matrix& m, double tol) {
  const Spectrum s = hermitian_eig(m);
  if (s.eigenvalues.size() > 0 && s.eigenvalues.minCoeff() < -kAtol)
    throw NotPsd("support_projector: input has a negative eigenvalue");
  Matrix proj = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
    if (s.eigenvalues(j) > tol)
      proj += s.eigenvectors.col(j) * s.eigenvectors.col(j).adjoint();
  }
  return hermitize(proj);
}

Eigen::Index subspace_intersection_rank(const Matrix& p, const Matrix& q,
                                        double tol) {
  if (p.rows() != q.rows() || p.cols() != q.cols())
    throw DimMismatch("subspace_intersection_rank: projector dimensions differ");
  for (const Matrix* mat : {&p, &q}) {
    if (!is_hermitian(*mat) || max_abs_diff(*mat * *mat, *mat) > kRtol)
      throw NotProjector(
          "subspace_intersection_rank: operand is not an orthogonal projector");
  }
  const Spectrum s = hermitian_eig(p + q);
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j)
    if (std::abs(s.eigenvalues(j) - 2.0) <= tol) ++rank;
  return rank;
}

}  // namespace epiqm::numerics
