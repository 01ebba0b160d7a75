#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace anglekit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when an input violates a documented precondition.
/// The message names the violated condition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a numerical procedure cannot produce a usable result
/// (failed iteration, rank/trace disagreement beyond repair).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Residual and rank cutoffs shared by every operation.
/// Invariant: both strictly positive and below 1.
struct Tolerance {
  double eq_tol = 1e-10;    // entrywise residual bound for identity checks
  double rank_tol = 1e-10;  // relative cutoff for singular-value truncation

  void check() const {
    if (!(eq_tol > 0.0 && eq_tol < 1.0) || !(rank_tol > 0.0 && rank_tol < 1.0)) {
      throw ValidationError("tolerances must lie strictly between 0 and 1");
    }
  }
};

/// Largest entry magnitude; 0 for an empty matrix.
inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Hilbert-Schmidt (Frobenius) norm.
inline double hs_norm(const ComplexMatrix& a) { return a.norm(); }

inline void require_finite(const ComplexMatrix& a, const char* who) {
  if (!a.allFinite()) {
    throw ValidationError(std::string(who) + ": matrix entries must be finite");
  }
}

inline void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw ValidationError(std::string(who) + ": matrix must be square");
  }
}

/// True when S*S == I within tol.eq_tol entrywise. Non-square inputs fail.
inline bool is_involution(const ComplexMatrix& s, const Tolerance& tol = Tolerance{}) {
  if (s.rows() != s.cols() || s.size() == 0 || !s.allFinite()) return false;
  const Index n = s.rows();
  return max_abs(s * s - ComplexMatrix::Identity(n, n)) <= tol.eq_tol;
}

/// True when P is Hermitian and idempotent within tol.eq_tol entrywise.
inline bool is_orthoprojection(const ComplexMatrix& p, const Tolerance& tol = Tolerance{}) {
  if (p.rows() != p.cols() || p.size() == 0 || !p.allFinite()) return false;
  return max_abs(p - p.adjoint()) <= tol.eq_tol && max_abs(p * p - p) <= tol.eq_tol;
}

/// True when U^H * U == I within tol.eq_tol entrywise.
inline bool is_unitary(const ComplexMatrix& u, const Tolerance& tol = Tolerance{}) {
  if (u.rows() != u.cols() || u.size() == 0 || !u.allFinite()) return false;
  const Index n = u.rows();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n)) <= tol.eq_tol;
}

}  // namespace anglekit
