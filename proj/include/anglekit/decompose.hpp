#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "anglekit/core.hpp"

namespace anglekit {

/// Full singular value decomposition: input = left * diag(singulars) * right^H,
/// with left (n x n) and right (m x m) unitary and singulars nonincreasing.
struct SvdResult {
  ComplexMatrix left;
  RealVector singulars;
  ComplexMatrix right;
};

inline SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  if (a.rows() == 0 || a.cols() == 0) {
    return {ComplexMatrix::Identity(a.rows(), a.rows()), RealVector(0),
            ComplexMatrix::Identity(a.cols(), a.cols())};
  }
  Eigen::JacobiSVD<ComplexMatrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    throw NumericalError("svd: decomposition failed to converge");
  }
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

/// Largest singular value; 0 for an empty matrix.
inline double operator_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return svd(a).singulars(0);
}

/// Count of singular values above rank_tol relative to the largest.
inline Index numerical_rank(const RealVector& singulars, const Tolerance& tol = Tolerance{}) {
  if (singulars.size() == 0) return 0;
  const double cut = tol.rank_tol * singulars(0);
  Index r = 0;
  while (r < singulars.size() && singulars(r) > cut && singulars(r) > 0.0) ++r;
  return r;
}

/// True when the largest singular value is at most 1 + tol.eq_tol.
inline bool is_contraction(const ComplexMatrix& a, const Tolerance& tol = Tolerance{}) {
  if (a.rows() != a.cols() || a.size() == 0 || !a.allFinite()) return false;
  return operator_norm(a) <= 1.0 + tol.eq_tol;
}

/// Polar decomposition input = unitary * hermitian with hermitian positive definite.
struct PolarResult {
  ComplexMatrix unitary;
  ComplexMatrix hermitian;
};

inline PolarResult polar_decompose(const ComplexMatrix& a, const Tolerance& tol = Tolerance{}) {
  require_square(a, "polar_decompose");
  require_finite(a, "polar_decompose");
  const SvdResult dec = svd(a);
  const Index n = a.rows();
  if (n == 0 || dec.singulars(n - 1) <= tol.rank_tol * dec.singulars(0) ||
      dec.singulars(0) == 0.0) {
    throw ValidationError("polar_decompose: matrix is rank deficient");
  }
  ComplexMatrix unitary = dec.left * dec.right.adjoint();
  ComplexMatrix hermitian =
      dec.right * dec.singulars.cast<Complex>().asDiagonal() * dec.right.adjoint();
  return {std::move(unitary), std::move(hermitian)};
}

/// Real power of a Hermitian positive semidefinite matrix via eigendecomposition.
/// Negative eigenvalues within roundoff are clamped to 0; for negative powers the
/// matrix must be definite relative to rank_tol.
inline ComplexMatrix hermitian_power(const ComplexMatrix& a, double power,
                                     const Tolerance& tol = Tolerance{}) {
  require_square(a, "hermitian_power");
  require_finite(a, "hermitian_power");
  const ComplexMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw NumericalError("hermitian_power: eigendecomposition failed");
  }
  RealVector lam = es.eigenvalues();
  const double lmax = lam.size() ? std::max(0.0, lam(lam.size() - 1)) : 0.0;
  RealVector powered(lam.size());
  for (Index i = 0; i < lam.size(); ++i) {
    double v = std::max(lam(i), 0.0);
    if (power < 0.0 && v <= tol.rank_tol * std::max(lmax, 1.0)) {
      throw ValidationError("hermitian_power: matrix is singular for a negative power");
    }
    powered(i) = (v == 0.0 && power == 0.0) ? 1.0 : std::pow(v, power);
  }
  return es.eigenvectors() * powered.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerance& tol = Tolerance{}) {
  return hermitian_power(a, 0.5, tol);
}

/// Principal real power A^x. Requires an invertible matrix with no eigenvalue on
/// the closed negative real axis (branch cut of the principal logarithm).
inline ComplexMatrix principal_power(const ComplexMatrix& a, double x,
                                     const Tolerance& tol = Tolerance{}) {
  require_square(a, "principal_power");
  require_finite(a, "principal_power");
  if (!std::isfinite(x)) throw ValidationError("principal_power: exponent must be finite");
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("principal_power: eigenvalue computation failed");
  }
  double scale = 0.0;
  for (Index i = 0; i < a.rows(); ++i) scale = std::max(scale, std::abs(es.eigenvalues()(i)));
  for (Index i = 0; i < a.rows(); ++i) {
    const Complex lam = es.eigenvalues()(i);
    const double mag = std::abs(lam);
    if (mag <= tol.rank_tol * std::max(scale, 1.0)) {
      throw ValidationError("principal_power: matrix must be invertible");
    }
    if (lam.real() <= 0.0 && std::abs(lam.imag()) <= tol.rank_tol * mag) {
      throw ValidationError(
          "principal_power: eigenvalue on the closed negative real axis");
    }
  }
  return ComplexMatrix(a.pow(x));
}

/// Given j orthonormal columns in C^n, returns an n x n unitary whose first j
/// columns are the input (the rest span the orthogonal complement).
inline ComplexMatrix extend_to_orthonormal_basis(const ComplexMatrix& b,
                                                 const Tolerance& tol = Tolerance{}) {
  const Index n = b.rows();
  const Index j = b.cols();
  if (j > n) throw ValidationError("extend_to_orthonormal_basis: more columns than rows");
  if (j == 0) return ComplexMatrix::Identity(n, n);
  require_finite(b, "extend_to_orthonormal_basis");
  if (max_abs(b.adjoint() * b - ComplexMatrix::Identity(j, j)) > tol.eq_tol) {
    throw ValidationError("extend_to_orthonormal_basis: columns are not orthonormal");
  }
  if (j == n) return b;
  Eigen::HouseholderQR<ComplexMatrix> qr(b);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix out(n, n);
  out.leftCols(j) = b;
  out.rightCols(n - j) = q.rightCols(n - j);
  return out;
}

/// Unitary eigendecomposition via the Schur form: for unitary u, the Schur
/// triangle of a normal matrix is diagonal, so u = vectors * diag(e^{i phase}) * vectors^H.
struct UnitaryEigen {
  ComplexMatrix vectors;       // unitary
  std::vector<double> phases;  // phase of each unimodular eigenvalue
};

inline UnitaryEigen diagonalize_unitary(const ComplexMatrix& u,
                                        const Tolerance& tol = Tolerance{}) {
  require_square(u, "diagonalize_unitary");
  if (!is_unitary(u, tol)) {
    throw ValidationError("diagonalize_unitary: input is not unitary");
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("diagonalize_unitary: Schur iteration failed");
  }
  UnitaryEigen out;
  out.vectors = schur.matrixU();
  out.phases.reserve(static_cast<std::size_t>(u.rows()));
  for (Index i = 0; i < u.rows(); ++i) {
    out.phases.push_back(std::arg(schur.matrixT()(i, i)));
  }
  return out;
}

}  // namespace anglekit
