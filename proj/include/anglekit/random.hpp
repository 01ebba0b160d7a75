#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "anglekit/core.hpp"
#include "anglekit/decompose.hpp"
#include "anglekit/subspace.hpp"

namespace anglekit {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic pseudo-random source. mt19937_64 output is pinned by the
/// standard and the variate transforms are hand-rolled, so the stream is
/// byte-for-byte reproducible across platforms and standard libraries.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(scramble(seed)) {}

  /// Independent substream: same (seed, stream) always yields the same Prng.
  static Prng derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    std::uint64_t mixed = detail::splitmix64(state);
    state ^= 0x9e3779b97f4a7c15ULL * (stream + 1);
    mixed ^= detail::splitmix64(state);
    return Prng(mixed);
  }

  /// Raw 64-bit engine word (for deriving generator seeds).
  std::uint64_t raw() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound;
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    return radius * std::cos(2.0 * std::numbers::pi * uniform());
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    return Complex(re, gaussian());
  }

 private:
  static std::uint64_t scramble(std::uint64_t seed) {
    std::uint64_t state = seed;
    (void)detail::splitmix64(state);
    return detail::splitmix64(state);
  }

  std::mt19937_64 engine_;
};

/// Matrix of independent complex gaussians.
inline ComplexMatrix ginibre(Index rows, Index cols, Prng& prng) {
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      g(i, j) = prng.complex_gaussian();
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phases
/// absorbed into Q (plain QR alone is not Haar).
inline ComplexMatrix random_haar_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_haar_unitary: dimension must be positive");
  Prng prng(seed);
  const ComplexMatrix g = ginibre(n, n, prng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= mag > 0.0 ? diag / mag : Complex(1.0);
  }
  return q;
}

/// Uniformly random d-dimensional subspace of C^n.
inline Subspace random_subspace(Index n, Index d, std::uint64_t seed,
                                const Tolerance& tol = Tolerance{}) {
  if (n < 1 || d < 1 || d > n) {
    throw ValidationError("random_subspace: need 1 <= d <= n");
  }
  return Subspace(random_haar_unitary(n, seed).leftCols(d), tol);
}

/// Strict contraction: Ginibre matrix rescaled to a norm drawn uniformly
/// from [0, 1).
inline ComplexMatrix random_contraction(Index n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_contraction: dimension must be positive");
  Prng prng(seed);
  const double target_norm = prng.uniform();
  const ComplexMatrix g = ginibre(n, n, prng);
  const double norm = operator_norm(g);
  if (norm == 0.0) return ComplexMatrix::Zero(n, n);
  return (target_norm / norm) * g;
}

/// Block parameters of a planted involution: sign of the identity block, its
/// size, and one coupling ratio in (0, 1] per 2x2 block.
struct InvolutionSpec {
  int epsilon = 1;
  Index k = 0;
  std::vector<double> xs;

  Index dim() const { return k + 2 * static_cast<Index>(xs.size()); }
};

/// Involution with prescribed canonical parameters, conjugated by a Haar
/// unitary so the planted structure is hidden.
inline ComplexMatrix random_involution(const InvolutionSpec& spec, std::uint64_t seed) {
  if (spec.epsilon != 1 && spec.epsilon != -1) {
    throw ValidationError("random_involution: epsilon must be +1 or -1");
  }
  if (spec.k < 0) throw ValidationError("random_involution: k must be nonnegative");
  for (double x : spec.xs) {
    if (!(x > 0.0) || !(x <= 1.0) || !std::isfinite(x)) {
      throw ValidationError("random_involution: ratios must lie in (0, 1]");
    }
  }
  const Index n = spec.dim();
  if (n < 1) throw ValidationError("random_involution: dimension must be positive");

  ComplexMatrix form = ComplexMatrix::Zero(n, n);
  form.topLeftCorner(spec.k, spec.k) =
      Complex(spec.epsilon) * ComplexMatrix::Identity(spec.k, spec.k);
  for (Index i = 0; i < static_cast<Index>(spec.xs.size()); ++i) {
    const double x = spec.xs[static_cast<std::size_t>(i)];
    form(spec.k + 2 * i, spec.k + 2 * i + 1) = 1.0 / x;
    form(spec.k + 2 * i + 1, spec.k + 2 * i) = x;
  }
  const ComplexMatrix v = random_haar_unitary(n, seed);
  return v * form * v.adjoint();
}

}  // namespace anglekit
