#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "anglekit/core.hpp"
#include "anglekit/decompose.hpp"

namespace anglekit {

/// Spectral projections of an involution onto its +1 and -1 eigenspaces.
/// Both are idempotent; they sum to the identity but are oblique in general.
struct SpectralPair {
  ComplexMatrix plus;
  ComplexMatrix minus;
};

inline SpectralPair spectral_projections(const ComplexMatrix& s,
                                         const Tolerance& tol = Tolerance{}) {
  require_square(s, "spectral_projections");
  if (!is_involution(s, tol)) {
    throw ValidationError("spectral_projections: input is not an involution");
  }
  const Index n = s.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return {(id + s) / 2.0, (id - s) / 2.0};
}

/// Unitary congruence data bringing an involution to canonical form.
///
/// With eps = sign of the trace (+1 when the trace vanishes), k = |trace|, and
/// one 2x2 block per eigenvector pair meeting at an angle strictly inside
/// (0, pi/2]:
///   unitary^H     * S * unitary     == eps*I_k  ⊕  [[0, 1/x_i], [x_i, 0]]
///   unitary_tri^H * S * unitary_tri == eps*I_k  ⊕  [[1, a_i],   [0,  -1]]
/// xs ascend in (0, 1]; as descend with a_i = 1/x_i - x_i indexwise.
struct InvolutionCanonicalForm {
  int epsilon = 1;
  Index k = 0;
  std::vector<double> xs;
  std::vector<double> as;
  ComplexMatrix unitary;
  ComplexMatrix unitary_tri;

  Index pair_count() const { return static_cast<Index>(xs.size()); }
  Index dim() const { return k + 2 * pair_count(); }

  /// eps*I_k ⊕ [[0, 1/x_i], [x_i, 0]] blocks.
  ComplexMatrix balanced_form() const {
    const Index n = dim();
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    f.topLeftCorner(k, k) = Complex(epsilon) * ComplexMatrix::Identity(k, k);
    for (Index i = 0; i < pair_count(); ++i) {
      const double x = xs[static_cast<std::size_t>(i)];
      f(k + 2 * i, k + 2 * i + 1) = 1.0 / x;
      f(k + 2 * i + 1, k + 2 * i) = x;
    }
    return f;
  }

  /// eps*I_k ⊕ [[1, a_i], [0, -1]] blocks.
  ComplexMatrix triangular_form() const {
    const Index n = dim();
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    f.topLeftCorner(k, k) = Complex(epsilon) * ComplexMatrix::Identity(k, k);
    for (Index i = 0; i < pair_count(); ++i) {
      f(k + 2 * i, k + 2 * i) = 1.0;
      f(k + 2 * i, k + 2 * i + 1) = as[static_cast<std::size_t>(i)];
      f(k + 2 * i + 1, k + 2 * i + 1) = -1.0;
    }
    return f;
  }
};

namespace detail {

/// Canonical form of an involution whose trace is nonnegative (eps = +1 case).
/// Returns the triangularizing unitary plus the block parameters.
inline InvolutionCanonicalForm canonical_form_nonneg(const ComplexMatrix& s, Index k) {
  const Index n = s.rows();
  const Index m = (n - k) / 2;
  const Index d = k + m;  // rank of the +1 spectral projection

  InvolutionCanonicalForm out;
  out.epsilon = 1;
  out.k = k;
  if (m == 0) {
    out.unitary = ComplexMatrix::Identity(n, n);
    out.unitary_tri = ComplexMatrix::Identity(n, n);
    return out;
  }

  // Adapted coordinates [range(E) | range(E)^perp] for E = (I + S)/2 turn E
  // into [[I_d, R], [0, 0]]; the singular values of R set the block parameters.
  const ComplexMatrix proj = (ComplexMatrix::Identity(n, n) + s) / 2.0;
  const SvdResult pdec = svd(proj);
  // Nonzero singular values of an idempotent are at least 1, so the rank gap
  // at d is wide; disagreement with the trace-derived d means the input lies.
  if (pdec.singulars(d - 1) < 0.5 || (d < n && pdec.singulars(d) > 0.5)) {
    throw NumericalError("canonical_form: spectral projection rank disagrees with the trace");
  }
  const ComplexMatrix range_e = pdec.left.leftCols(d);
  const ComplexMatrix range_perp = pdec.left.rightCols(m);
  const ComplexMatrix corner = range_e.adjoint() * proj * range_perp;  // d x m

  const SvdResult cdec = svd(corner);
  out.as.resize(static_cast<std::size_t>(m));
  out.xs.resize(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    // In these coordinates S = [[I, 2*corner], [0, -I]]; the i-th coupling
    // strength is a_i = 2 sigma_i, giving x_i via x = (sqrt(a^2+4) - a)/2.
    const double a = 2.0 * cdec.singulars(i);
    out.as[static_cast<std::size_t>(i)] = a;
    out.xs[static_cast<std::size_t>(i)] = (std::sqrt(a * a + 4.0) - a) / 2.0;
  }

  ComplexMatrix plus_side = range_e * cdec.left;     // n x d
  ComplexMatrix minus_side = range_perp * cdec.right;  // n x m

  // Column layout: the k uncoupled +1 directions first, then one (plus, minus)
  // pair per block. Couplings descend, so xs ascend.
  ComplexMatrix tri(n, n);
  tri.leftCols(k) = plus_side.rightCols(k);
  for (Index i = 0; i < m; ++i) {
    tri.col(k + 2 * i) = plus_side.col(i);
    tri.col(k + 2 * i + 1) = minus_side.col(i);
  }
  out.unitary_tri = std::move(tri);
  return out;
}

}  // namespace detail

inline InvolutionCanonicalForm canonical_form(const ComplexMatrix& s,
                                              const Tolerance& tol = Tolerance{}) {
  require_square(s, "canonical_form");
  if (!is_involution(s, tol)) {
    throw ValidationError("canonical_form: input is not an involution");
  }
  const Index n = s.rows();
  const Complex tr = s.trace();
  const long long k_signed = std::llround(tr.real());
  if (std::abs(tr.real() - static_cast<double>(k_signed)) > 0.25 ||
      std::abs(tr.imag()) > 0.25) {
    throw NumericalError("canonical_form: trace is not close to an integer");
  }
  const Index k = static_cast<Index>(std::llabs(k_signed));
  if ((n - k) % 2 != 0) {
    throw NumericalError("canonical_form: trace parity disagrees with the dimension");
  }

  const int epsilon = k_signed < 0 ? -1 : 1;
  InvolutionCanonicalForm out =
      detail::canonical_form_nonneg(epsilon < 0 ? ComplexMatrix(-s) : s, k);
  out.epsilon = epsilon;

  if (epsilon < 0 && out.pair_count() > 0) {
    // The negated involution was triangularized; restore the original per
    // block with the reflection fixing [[-1, -a], [0, 1]] -> [[1, a], [0, -1]].
    for (Index i = 0; i < out.pair_count(); ++i) {
      const double a = out.as[static_cast<std::size_t>(i)];
      const double norm = std::sqrt(a * a + 4.0);
      Eigen::Matrix2cd fix;
      fix << Complex(-a / norm), Complex(2.0 / norm), Complex(2.0 / norm), Complex(a / norm);
      out.unitary_tri.middleCols(out.k + 2 * i, 2) =
          (out.unitary_tri.middleCols(out.k + 2 * i, 2) * fix).eval();
    }
  }

  // Balanced columns differ from the triangular ones by a per-block rotation:
  // g [[1, a], [0, -1]] g^H = [[0, 1/x], [x, 0]] for g = [[1, -x], [x, 1]]/sqrt(1+x^2).
  out.unitary = out.unitary_tri;
  for (Index i = 0; i < out.pair_count(); ++i) {
    const double x = out.xs[static_cast<std::size_t>(i)];
    const double norm = std::sqrt(1.0 + x * x);
    Eigen::Matrix2cd rot_adj;  // g^H
    rot_adj << Complex(1.0 / norm), Complex(x / norm), Complex(-x / norm), Complex(1.0 / norm);
    out.unitary.middleCols(out.k + 2 * i, 2) =
        (out.unitary.middleCols(out.k + 2 * i, 2) * rot_adj).eval();
  }
  return out;
}

/// Angles at which the two eigenspaces of an involution meet, ascending in
/// (0, pi/2]; one angle per 2x2 block of the canonical form.
inline std::vector<double> involution_angles(const ComplexMatrix& s,
                                             const Tolerance& tol = Tolerance{}) {
  const InvolutionCanonicalForm form = canonical_form(s, tol);
  std::vector<double> angles;
  angles.reserve(form.xs.size());
  for (double x : form.xs) angles.push_back(2.0 * std::atan(x));
  return angles;
}

/// Polar data of an involution. The unitary factor is itself a Hermitian
/// involution; friedrichs_sine = 2 / (||S|| + 1/||S||) is the sine of the
/// smallest angle between the eigenspaces.
struct PolarFacts {
  ComplexMatrix unitary;
  ComplexMatrix modulus;
  double friedrichs_sine = 1.0;
};

inline PolarFacts polar_facts(const ComplexMatrix& s, const Tolerance& tol = Tolerance{}) {
  require_square(s, "polar_facts");
  if (!is_involution(s, tol)) {
    throw ValidationError("polar_facts: input is not an involution");
  }
  PolarResult polar = polar_decompose(s, tol);
  const double norm = std::max(operator_norm(s), 1.0);
  return {std::move(polar.unitary), std::move(polar.hermitian), 2.0 / (norm + 1.0 / norm)};
}

/// Angle of an involution with exactly one 2x2 block, read off the
/// Hilbert-Schmidt norm: alpha = arccot(sqrt(||S||_2^2 - n) / 2).
inline double skew_reflection_angle(const ComplexMatrix& s, const Tolerance& tol = Tolerance{}) {
  require_square(s, "skew_reflection_angle");
  if (!is_involution(s, tol)) {
    throw ValidationError("skew_reflection_angle: input is not an involution");
  }
  const Index n = s.rows();
  const double tr = s.trace().real();
  const long long k = std::llabs(std::llround(tr));
  if (n - static_cast<Index>(k) != 2) {
    throw ValidationError("skew_reflection_angle: involution must have exactly one angle pair");
  }
  const double hs2 = hs_norm(s) * hs_norm(s);
  const double half_a = std::sqrt(std::max(hs2 - static_cast<double>(n), 0.0)) / 2.0;
  return std::atan2(1.0, half_a);  // arccot on [0, pi/2]
}

/// Both sides of the trace identity for an idempotent:
/// Tr(E^H E) - Tr(E) equals the sum of squared quarter-couplings (a_i/2)^2 of
/// the involution 2E - I.
struct TraceIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline TraceIdentity projection_trace_identity(const ComplexMatrix& e,
                                               const Tolerance& tol = Tolerance{}) {
  require_square(e, "projection_trace_identity");
  require_finite(e, "projection_trace_identity");
  if (max_abs(e * e - e) > tol.eq_tol) {
    throw ValidationError("projection_trace_identity: input is not idempotent");
  }
  const Index n = e.rows();
  const Complex tr = e.trace();
  if (std::abs(tr.imag()) > tol.eq_tol * static_cast<double>(std::max<Index>(n, 1))) {
    throw ValidationError("projection_trace_identity: trace has a nontrivial imaginary part");
  }
  const double lhs = hs_norm(e) * hs_norm(e) - tr.real();

  // 2E - I squares to I + 4(E^2 - E), so loosen the involution check in step.
  Tolerance relaxed = tol;
  relaxed.eq_tol = std::min(4.0 * tol.eq_tol, 0.5);
  const ComplexMatrix s = 2.0 * e - ComplexMatrix::Identity(n, n);
  const InvolutionCanonicalForm form = canonical_form(s, relaxed);
  double rhs = 0.0;
  for (double a : form.as) rhs += (a / 2.0) * (a / 2.0);
  return {lhs, rhs};
}

}  // namespace anglekit
