#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "anglekit/core.hpp"
#include "anglekit/decompose.hpp"

namespace anglekit {

/// Subspace of C^n held as an orthonormal basis (n x d, 1 <= d <= n).
class Subspace {
 public:
  /// Wraps an already-orthonormal basis; rejects anything else.
  explicit Subspace(ComplexMatrix basis, const Tolerance& tol = Tolerance{})
      : basis_(std::move(basis)) {
    const Index n = basis_.rows();
    const Index d = basis_.cols();
    if (n < 1 || d < 1 || d > n) {
      throw ValidationError("Subspace: basis must be n x d with 1 <= d <= n");
    }
    require_finite(basis_, "Subspace");
    if (max_abs(basis_.adjoint() * basis_ - ComplexMatrix::Identity(d, d)) > tol.eq_tol) {
      throw ValidationError("Subspace: basis columns are not orthonormal");
    }
  }

  /// Column span of an arbitrary matrix, orthonormalized by SVD and truncated
  /// at the numerical rank. Rejects a numerically zero span.
  static Subspace span(const ComplexMatrix& vectors, const Tolerance& tol = Tolerance{}) {
    require_finite(vectors, "Subspace::span");
    if (vectors.rows() < 1 || vectors.cols() < 1) {
      throw ValidationError("Subspace::span: input must be nonempty");
    }
    const SvdResult dec = svd(vectors);
    const Index r = numerical_rank(dec.singulars, tol);
    if (r == 0) throw ValidationError("Subspace::span: vectors span only the zero space");
    return Subspace(dec.left.leftCols(r), tol);
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const ComplexMatrix& basis() const { return basis_; }

  /// Orthogonal projection onto the subspace.
  ComplexMatrix projection() const { return basis_ * basis_.adjoint(); }

  /// Orthogonal complement; rejects the full space (a subspace here has d >= 1).
  Subspace orthogonal_complement(const Tolerance& tol = Tolerance{}) const {
    const Index n = ambient_dim();
    if (dim() == n) {
      throw ValidationError("Subspace: the full space has an empty complement");
    }
    ComplexMatrix full = extend_to_orthonormal_basis(basis_, tol);
    return Subspace(full.rightCols(n - dim()), tol);
  }

 private:
  ComplexMatrix basis_;
};

/// Principal angles between two subspaces plus the vectors realizing them.
/// angles ascend in [0, pi/2]; cosines descend and are the singular values of
/// basis(P)^H basis(Q). Vector columns satisfy <p_i, q_j> = delta_ij cos(angle_i).
/// q_complement spans the part of Q orthogonal to all principal q-vectors; it is
/// orthogonal to P as a whole.
struct PrincipalAngleSet {
  std::vector<double> angles;
  std::vector<double> cosines;
  ComplexMatrix p_vectors;     // n x r, inside P
  ComplexMatrix q_vectors;     // n x r, inside Q
  ComplexMatrix q_complement;  // n x (dim Q - r)
  Index product_rank = 0;      // numerical rank of basis(P)^H basis(Q)
};

inline PrincipalAngleSet principal_angles(const Subspace& p, const Subspace& q,
                                          const Tolerance& tol = Tolerance{}) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw ValidationError("principal_angles: ambient dimensions differ");
  }
  const ComplexMatrix cross = p.basis().adjoint() * q.basis();
  const SvdResult dec = svd(cross);
  const Index r = std::min(p.dim(), q.dim());

  PrincipalAngleSet out;
  out.angles.reserve(static_cast<std::size_t>(r));
  out.cosines.reserve(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i) {
    double c = std::clamp(dec.singulars(i), 0.0, 1.0);
    // Cosines within rank_tol of 1 mark directions lying in the intersection;
    // snap them so intersection angles come out exactly 0.
    if (c >= 1.0 - tol.rank_tol) {
      out.cosines.push_back(1.0);
      out.angles.push_back(0.0);
    } else {
      out.cosines.push_back(c);
      out.angles.push_back(std::acos(c));
    }
  }
  out.p_vectors = p.basis() * dec.left.leftCols(r);
  out.q_vectors = q.basis() * dec.right.leftCols(r);
  out.q_complement = q.basis() * dec.right.rightCols(q.dim() - r);
  out.product_rank = numerical_rank(dec.singulars, tol);
  return out;
}

/// Unitary change of basis splitting a pair of subspaces into their common
/// part, 2x2 interaction blocks (one per nonzero angle), the part of the larger
/// subspace at a right angle to the smaller, and the exterior of the sum.
/// Column layout of `unitary`:
///   [ intersection | (pair_1 .. pair_m, 2 columns each) | right-angle part | exterior ].
struct JointBlockStructure {
  ComplexMatrix unitary;
  Index dim_intersection = 0;
  std::vector<double> pair_angles;  // ascending, strictly inside (0, pi/2]
  Index dim_orthogonal = 0;         // larger subspace ∩ (smaller)^perp beyond the pairs
  Index dim_exterior = 0;           // complement of (smaller + larger)
  bool swapped = false;             // inputs exchanged so the smaller came first

  Index ambient_dim() const { return unitary.rows(); }

  /// Model of the smaller subspace's projection in the adapted basis:
  /// I ⊕ [[c^2, cs],[cs, s^2]] per pair ⊕ 0 ⊕ 0.
  ComplexMatrix smaller_projection_form() const {
    const Index n = ambient_dim();
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    f.topLeftCorner(dim_intersection, dim_intersection).setIdentity();
    Index at = dim_intersection;
    for (double a : pair_angles) {
      const double c = std::cos(a), s = std::sin(a);
      f(at, at) = c * c;
      f(at, at + 1) = c * s;
      f(at + 1, at) = c * s;
      f(at + 1, at + 1) = s * s;
      at += 2;
    }
    return f;
  }

  /// Model of the larger subspace's projection in the adapted basis:
  /// I ⊕ [[1,0],[0,0]] per pair ⊕ I ⊕ 0.
  ComplexMatrix larger_projection_form() const {
    const Index n = ambient_dim();
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    f.topLeftCorner(dim_intersection, dim_intersection).setIdentity();
    Index at = dim_intersection;
    for (std::size_t i = 0; i < pair_angles.size(); ++i) {
      f(at, at) = 1.0;
      at += 2;
    }
    f.block(at, at, dim_orthogonal, dim_orthogonal).setIdentity();
    return f;
  }
};

inline JointBlockStructure joint_block_diagonalize(const Subspace& p, const Subspace& q,
                                                   const Tolerance& tol = Tolerance{}) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw ValidationError("joint_block_diagonalize: ambient dimensions differ");
  }
  const bool swapped = p.dim() > q.dim();
  const Subspace& small = swapped ? q : p;
  const Subspace& large = swapped ? p : q;

  const PrincipalAngleSet pa = principal_angles(small, large, tol);
  const Index n = small.ambient_dim();
  const Index r = small.dim();

  Index zero_count = 0;
  while (zero_count < r && pa.angles[static_cast<std::size_t>(zero_count)] == 0.0) {
    ++zero_count;
  }
  const Index pairs = r - zero_count;

  JointBlockStructure out;
  out.swapped = swapped;
  out.dim_intersection = zero_count;
  out.pair_angles.assign(pa.angles.begin() + zero_count, pa.angles.end());
  out.dim_orthogonal = large.dim() - r;
  out.dim_exterior = n - (zero_count + 2 * pairs + out.dim_orthogonal);

  ComplexMatrix prefix(n, zero_count + 2 * pairs + out.dim_orthogonal);
  prefix.leftCols(zero_count) = pa.q_vectors.leftCols(zero_count);
  for (Index i = 0; i < pairs; ++i) {
    const Index idx = zero_count + i;
    const ComplexVector qi = pa.q_vectors.col(idx);
    const ComplexVector pi = pa.p_vectors.col(idx);
    // Unit vector inside (smaller + q_i) orthogonal to q_i; with q_i it frames
    // the 2x2 interaction block.
    ComplexVector ortho = pi - Complex(pa.cosines[static_cast<std::size_t>(idx)]) * qi;
    const double len = ortho.norm();
    if (len <= tol.rank_tol) {
      throw NumericalError("joint_block_diagonalize: degenerate interaction pair");
    }
    ortho /= len;
    prefix.col(zero_count + 2 * i) = qi;
    prefix.col(zero_count + 2 * i + 1) = ortho;
  }
  prefix.rightCols(out.dim_orthogonal) = pa.q_complement;

  // Pairs just above the snapping cutoff amplify roundoff in the normalized
  // ortho vectors; relax the frame re-check accordingly (the QR extension only
  // appends columns, it never perturbs the prefix).
  const double frame_tol = std::max(tol.eq_tol, 4.0 * std::sqrt(tol.rank_tol));
  Tolerance extend_tol = tol;
  extend_tol.eq_tol = frame_tol;
  out.unitary = extend_to_orthonormal_basis(prefix, extend_tol);
  return out;
}

/// Unitary carrying one pair of subspaces onto another with the same dimension
/// pattern and the same principal angles: u maps (p, q) onto (p2, q2).
inline ComplexMatrix pair_isometry(const Subspace& p, const Subspace& q, const Subspace& p2,
                                   const Subspace& q2, const Tolerance& tol = Tolerance{}) {
  if (p.ambient_dim() != q.ambient_dim() || p2.ambient_dim() != q2.ambient_dim() ||
      p.ambient_dim() != p2.ambient_dim()) {
    throw ValidationError("pair_isometry: ambient dimensions differ");
  }
  if (p.dim() != p2.dim() || q.dim() != q2.dim()) {
    throw ValidationError("pair_isometry: dimension patterns differ");
  }
  JointBlockStructure s1 = joint_block_diagonalize(p, q, tol);
  JointBlockStructure s2 = joint_block_diagonalize(p2, q2, tol);
  if (s1.dim_intersection != s2.dim_intersection) {
    throw ValidationError("pair_isometry: intersection dimensions differ");
  }
  if (s1.pair_angles.size() != s2.pair_angles.size()) {
    throw ValidationError("pair_isometry: angle multiplicities differ");
  }
  for (std::size_t i = 0; i < s1.pair_angles.size(); ++i) {
    if (std::abs(s1.pair_angles[i] - s2.pair_angles[i]) > tol.eq_tol) {
      throw ValidationError("pair_isometry: principal angles differ");
    }
  }
  return s2.unitary * s1.unitary.adjoint();
}

/// Both sides of the sum-norm identity ||P + Q|| = 1 + ||P Q|| for the
/// orthogonal projections onto the two subspaces.
struct SumNormCheck {
  double sum_norm = 0.0;           // ||P + Q||
  double one_plus_product = 0.0;   // 1 + ||P Q||
};

inline SumNormCheck check_sum_norm(const Subspace& p, const Subspace& q) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw ValidationError("check_sum_norm: ambient dimensions differ");
  }
  const ComplexMatrix pp = p.projection();
  const ComplexMatrix qq = q.projection();
  return {operator_norm(pp + qq), 1.0 + operator_norm(pp * qq)};
}

/// Gap ||P - Q|| between the projections of two equal-dimensional subspaces;
/// equals the sine of the largest principal angle.
inline double gap(const Subspace& p, const Subspace& q) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw ValidationError("gap: ambient dimensions differ");
  }
  if (p.dim() != q.dim()) {
    throw ValidationError("gap: subspace dimensions differ");
  }
  return operator_norm(p.projection() - q.projection());
}

/// Angle data for a complementary pair together with a unitary exchanging the
/// pair with its orthogonal complements: u maps p onto q^perp and q onto p^perp.
struct PerpPairAngles {
  std::vector<double> angles;       // principal angles of (p, q)
  std::vector<double> perp_angles;  // principal angles of (p^perp, q^perp)
  ComplexMatrix swap_unitary;
};

inline PerpPairAngles perp_pair_angles(const Subspace& p, const Subspace& q,
                                       const Tolerance& tol = Tolerance{}) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw ValidationError("perp_pair_angles: ambient dimensions differ");
  }
  const Index n = p.ambient_dim();
  if (p.dim() + q.dim() != n) {
    throw ValidationError("perp_pair_angles: dimensions do not sum to the ambient space");
  }
  ComplexMatrix both(n, n);
  both.leftCols(p.dim()) = p.basis();
  both.rightCols(q.dim()) = q.basis();
  if (numerical_rank(svd(both).singulars, tol) != n) {
    throw ValidationError("perp_pair_angles: subspaces are not complementary");
  }

  const bool swapped = p.dim() > q.dim();
  const Subspace& small = swapped ? q : p;
  const Subspace& large = swapped ? p : q;
  const PrincipalAngleSet pa = principal_angles(small, large, tol);
  const Index r = small.dim();
  if (r > 0 && pa.angles.front() == 0.0) {
    throw ValidationError("perp_pair_angles: subspaces share a direction");
  }

  // Adapted frame: (q_i, q_i0) per angle, then the part of the larger subspace
  // at a right angle to the smaller. Complementarity forces this to fill C^n.
  ComplexMatrix frame(n, n);
  for (Index i = 0; i < r; ++i) {
    const ComplexVector qi = pa.q_vectors.col(i);
    ComplexVector ortho = pa.p_vectors.col(i) - Complex(pa.cosines[static_cast<std::size_t>(i)]) * qi;
    ortho /= ortho.norm();
    frame.col(2 * i) = qi;
    frame.col(2 * i + 1) = ortho;
  }
  frame.rightCols(n - 2 * r) = pa.q_complement;

  // Per pair the exchange with the complements is the reflection
  // [[-sin a, cos a],[cos a, sin a]] in the (q_i, q_i0) frame; on the
  // right-angle part it is the identity.
  ComplexMatrix blocks = ComplexMatrix::Identity(n, n);
  for (Index i = 0; i < r; ++i) {
    const double a = pa.angles[static_cast<std::size_t>(i)];
    const double c = std::cos(a), s = std::sin(a);
    blocks(2 * i, 2 * i) = -s;
    blocks(2 * i, 2 * i + 1) = c;
    blocks(2 * i + 1, 2 * i) = c;
    blocks(2 * i + 1, 2 * i + 1) = s;
  }

  PerpPairAngles out;
  out.angles = pa.angles;
  out.swap_unitary = frame * blocks * frame.adjoint();
  out.perp_angles =
      principal_angles(small.orthogonal_complement(tol), large.orthogonal_complement(tol), tol)
          .angles;
  return out;
}

}  // namespace anglekit
