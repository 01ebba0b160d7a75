#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "anglekit/core.hpp"
#include "anglekit/decompose.hpp"
#include "anglekit/involution.hpp"

namespace anglekit {

/// Numerical range of a nontrivial involution: a filled ellipse with foci at
/// +-1, semi-axes (s + 1/s)/2 and (s - 1/s)/2 for s = ||S||.
struct NumericalRangeEllipse {
  double norm = 1.0;        // s
  double semi_major = 1.0;  // along the real axis
  double semi_minor = 0.0;  // along the imaginary axis

  /// Membership within additive slack on the defining quadratic form.
  bool contains(Complex z, double slack = 0.0) const {
    if (semi_minor == 0.0) {
      return std::abs(z.imag()) <= slack && std::abs(z.real()) <= semi_major + slack;
    }
    const double qx = z.real() / semi_major;
    const double qy = z.imag() / semi_minor;
    return qx * qx + qy * qy <= 1.0 + slack;
  }
};

inline NumericalRangeEllipse ellipse_of(const ComplexMatrix& s,
                                        const Tolerance& tol = Tolerance{}) {
  require_square(s, "ellipse_of");
  if (!is_involution(s, tol)) {
    throw ValidationError("ellipse_of: input is not an involution");
  }
  const Index n = s.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (max_abs(s - id) <= tol.eq_tol || max_abs(s + id) <= tol.eq_tol) {
    throw ValidationError("ellipse_of: numerical range of +-I degenerates to a point");
  }
  const double norm = std::max(operator_norm(s), 1.0);
  return {norm, (norm + 1.0 / norm) / 2.0, (norm - 1.0 / norm) / 2.0};
}

/// Unit vector u with <u, T u> == target for a 2x2 block T = [[0, beta], [gamma, 0]]
/// with beta * gamma real positive. Solutions have the shape
/// u = (cos t, e^{i phi} sin t); the attained values sweep the filled ellipse
/// sin(2t) * (A cos phi + i B sin phi) with A = (beta+gamma)/2, B = (beta-gamma)/2.
inline ComplexVector inverse_range_2x2(const ComplexMatrix& t, Complex target,
                                       const Tolerance& tol = Tolerance{}) {
  if (t.rows() != 2 || t.cols() != 2) {
    throw ValidationError("inverse_range_2x2: block must be 2x2");
  }
  require_finite(t, "inverse_range_2x2");
  if (std::abs(t(0, 0)) > tol.eq_tol || std::abs(t(1, 1)) > tol.eq_tol) {
    throw ValidationError("inverse_range_2x2: block must have zero diagonal");
  }
  const Complex beta = t(0, 1);
  const Complex gamma = t(1, 0);
  const Complex prod = beta * gamma;
  if (prod.real() <= 0.0 || std::abs(prod.imag()) > tol.eq_tol * std::abs(prod)) {
    throw ValidationError("inverse_range_2x2: off-diagonal product must be real positive");
  }

  if (std::abs(target) <= tol.eq_tol) {
    ComplexVector u(2);
    u << Complex(1.0), Complex(0.0);
    return u;
  }

  const Complex half_sum = (beta + gamma) / 2.0;
  const Complex half_diff = (beta - gamma) / 2.0;
  // target = rho * (half_sum cos phi + i half_diff sin phi) with rho = sin 2t:
  // a real-linear 2x2 system for rho*(cos phi, sin phi).
  const double m00 = half_sum.real(), m01 = -half_diff.imag();
  const double m10 = half_sum.imag(), m11 = half_diff.real();
  const double det = m00 * m11 - m01 * m10;
  const double scale = std::abs(half_sum) + std::abs(half_diff);
  double rho, phi;
  if (std::abs(det) <= tol.rank_tol * scale * scale) {
    // Degenerate ellipse (beta == gamma up to phase): the range is the segment
    // of multiples of half_sum.
    const Complex ratio = target / half_sum;
    if (std::abs(ratio.imag()) > tol.eq_tol * std::max(1.0, std::abs(ratio))) {
      throw ValidationError("inverse_range_2x2: target lies outside the degenerate range");
    }
    rho = std::abs(ratio.real());
    phi = ratio.real() >= 0.0 ? 0.0 : std::numbers::pi;
  } else {
    const double w0 = (m11 * target.real() - m01 * target.imag()) / det;
    const double w1 = (m00 * target.imag() - m10 * target.real()) / det;
    rho = std::hypot(w0, w1);
    phi = std::atan2(w1, w0);
  }
  if (rho > 1.0 + tol.eq_tol) {
    throw ValidationError("inverse_range_2x2: target lies outside the numerical range");
  }
  const double half_angle = 0.5 * std::asin(std::min(rho, 1.0));
  ComplexVector u(2);
  u << Complex(std::cos(half_angle)),
      std::polar(std::sin(half_angle), phi);
  return u;
}

/// A dilation with the original matrix in the top-left corner.
enum class DilationKind { involution, unitary };

struct DilationResult {
  ComplexMatrix matrix;
  Index corner_dim = 0;
  DilationKind kind = DilationKind::involution;
};

inline const char* to_string(DilationKind kind) {
  return kind == DilationKind::unitary ? "unitary" : "involution";
}

/// Unitary dilation [[A, -(I - A A^H)^{1/2}], [(I - A^H A)^{1/2}, A^H]] of a
/// contraction, twice the size.
inline DilationResult halmos_dilation(const ComplexMatrix& a, const Tolerance& tol = Tolerance{}) {
  require_square(a, "halmos_dilation");
  require_finite(a, "halmos_dilation");
  if (!is_contraction(a, tol)) {
    throw ValidationError("halmos_dilation: input is not a contraction");
  }
  const Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix defect_right = hermitian_sqrt(id - a.adjoint() * a, tol);
  const ComplexMatrix defect_left = hermitian_sqrt(id - a * a.adjoint(), tol);
  ComplexMatrix u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = a;
  u.topRightCorner(n, n) = -defect_left;
  u.bottomLeftCorner(n, n) = defect_right;
  u.bottomRightCorner(n, n) = a.adjoint();
  return {std::move(u), n, DilationKind::unitary};
}

/// Involution dilation of a contraction, four times the size, with operator
/// norm exactly 1 + sqrt(2).
///
/// Construction: diagonalize the Halmos dilation H = W diag(e^{i theta_k}) W^H,
/// realize each eigenvalue as <u_k, T u_k> for the norm-minimal involution block
/// T = [[0, 1 + sqrt(2)], [sqrt(2) - 1, 0]] (unit circle lies inside its range),
/// stack the u_k into orthonormal columns of C^{4n}, extend to a basis, and
/// conjugate the direct sum of 2n copies of T back.
inline DilationResult involution_dilation(const ComplexMatrix& a,
                                          const Tolerance& tol = Tolerance{}) {
  require_square(a, "involution_dilation");
  require_finite(a, "involution_dilation");
  if (!is_contraction(a, tol)) {
    throw ValidationError("involution_dilation: input is not a contraction");
  }
  const Index n = a.rows();
  const DilationResult halmos = halmos_dilation(a, tol);
  const UnitaryEigen eig = diagonalize_unitary(halmos.matrix, tol);

  const double root2 = std::numbers::sqrt2;
  ComplexMatrix block(2, 2);
  block << Complex(0.0), Complex(1.0 + root2), Complex(root2 - 1.0), Complex(0.0);

  const Index big = 4 * n;
  ComplexMatrix stacked = ComplexMatrix::Zero(big, 2 * n);
  for (Index j = 0; j < 2 * n; ++j) {
    const ComplexVector u =
        inverse_range_2x2(block, std::polar(1.0, eig.phases[static_cast<std::size_t>(j)]), tol);
    stacked(2 * j, j) = u(0);
    stacked(2 * j + 1, j) = u(1);
  }
  const ComplexMatrix basis = extend_to_orthonormal_basis(stacked, tol);

  ComplexMatrix repeated = ComplexMatrix::Zero(big, big);
  for (Index j = 0; j < 2 * n; ++j) {
    repeated.block(2 * j, 2 * j, 2, 2) = block;
  }

  // In the stacked basis the top-left 2n x 2n corner is diag(e^{i theta});
  // conjugating by W ⊕ I restores the Halmos dilation, hence A, in the corner.
  ComplexMatrix mixer = ComplexMatrix::Identity(big, big);
  mixer.topLeftCorner(2 * n, 2 * n) = eig.vectors;
  ComplexMatrix s = mixer * (basis.adjoint() * repeated * basis) * mixer.adjoint();
  return {std::move(s), n, DilationKind::involution};
}

/// [[A, I + A], [I - A, -A]]: squares to the identity for every square A.
inline DilationResult s_a_dilation(const ComplexMatrix& a) {
  require_square(a, "s_a_dilation");
  require_finite(a, "s_a_dilation");
  const Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a;
  s.topRightCorner(n, n) = id + a;
  s.bottomLeftCorner(n, n) = id - a;
  s.bottomRightCorner(n, n) = -a;
  return {std::move(s), n, DilationKind::involution};
}

/// [[A, I - A^2], [I, -A]]: the triangular-coupling variant, also an involution.
inline DilationResult t_a_dilation(const ComplexMatrix& a) {
  require_square(a, "t_a_dilation");
  require_finite(a, "t_a_dilation");
  const Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a;
  s.topRightCorner(n, n) = id - a * a;
  s.bottomLeftCorner(n, n) = id;
  s.bottomRightCorner(n, n) = -a;
  return {std::move(s), n, DilationKind::involution};
}

/// [[A, I - A], [I + A, -A]]: entrywise transpose pattern of the first variant;
/// an involution with the same corner.
inline DilationResult partial_transpose_dilation(const ComplexMatrix& a) {
  require_square(a, "partial_transpose_dilation");
  require_finite(a, "partial_transpose_dilation");
  const Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a;
  s.topRightCorner(n, n) = id - a;
  s.bottomLeftCorner(n, n) = id + a;
  s.bottomRightCorner(n, n) = -a;
  return {std::move(s), n, DilationKind::involution};
}

/// One-parameter deformation [[A, I + A^x], [I - A^{2-x}, -A]] joining the
/// triangular variant's shape to the symmetric one; recovers s_a_dilation at
/// x = 1, which is the only parameter where the square is the identity for
/// generic A. Requires the principal powers to exist.
inline DilationResult s_a_family(const ComplexMatrix& a, double x,
                                 const Tolerance& tol = Tolerance{}) {
  require_square(a, "s_a_family");
  require_finite(a, "s_a_family");
  const Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix up = principal_power(a, x, tol);
  const ComplexMatrix down = principal_power(a, 2.0 - x, tol);
  ComplexMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a;
  s.topRightCorner(n, n) = id + up;
  s.bottomLeftCorner(n, n) = id - down;
  s.bottomRightCorner(n, n) = -a;
  return {std::move(s), n, DilationKind::involution};
}

}  // namespace anglekit
