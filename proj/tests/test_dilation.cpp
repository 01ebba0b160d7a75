#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <anglekit/dilation.hpp>
#include <anglekit/random.hpp>

#include "oracles.hpp"

using namespace anglekit;

namespace {

ComplexMatrix real2x2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << Complex(a), Complex(b), Complex(c), Complex(d);
  return m;
}

ComplexMatrix scalar(Complex z) {
  ComplexMatrix m(1, 1);
  m << z;
  return m;
}

constexpr double kPi = std::numbers::pi;
constexpr double kRoot2 = std::numbers::sqrt2;

ComplexMatrix norm_minimal_block() {
  return real2x2(0.0, 1.0 + kRoot2, kRoot2 - 1.0, 0.0);
}

}  // namespace

TEST_CASE("numerical range ellipse of an involution") {
  const NumericalRangeEllipse e = ellipse_of(real2x2(1.0, 2.0, 0.0, -1.0));
  CHECK(e.norm == Catch::Approx(1.0 + kRoot2).margin(1e-12));
  CHECK(e.semi_major == Catch::Approx(kRoot2).margin(1e-12));
  CHECK(e.semi_minor == Catch::Approx(1.0).margin(1e-12));
  // Foci +-1 lie inside.
  CHECK(e.contains(Complex(1.0, 0.0)));
  CHECK(e.contains(Complex(-1.0, 0.0)));
  CHECK_FALSE(e.contains(Complex(0.0, 1.5)));

  SECTION("the norm-minimal block swallows the closed unit disc") {
    const NumericalRangeEllipse minimal = ellipse_of(norm_minimal_block());
    CHECK(minimal.semi_major == Catch::Approx(kRoot2).margin(1e-12));
    CHECK(minimal.semi_minor == Catch::Approx(1.0).margin(1e-12));
    for (int i = 0; i < 64; ++i) {
      const double theta = 2.0 * kPi * i / 64.0;
      CHECK(minimal.contains(std::polar(1.0, theta), 1e-12));
    }
  }
  SECTION("antidiagonal block with norm 2") {
    const NumericalRangeEllipse wide = ellipse_of(real2x2(0.0, 2.0, 0.5, 0.0));
    CHECK(wide.norm == Catch::Approx(2.0).margin(1e-12));
    CHECK(wide.semi_major == Catch::Approx(1.25).margin(1e-12));
    CHECK(wide.semi_minor == Catch::Approx(0.75).margin(1e-12));
  }
  SECTION("Hermitian involutions degenerate to the segment [-1, 1]") {
    const NumericalRangeEllipse flat = ellipse_of(real2x2(1.0, 0.0, 0.0, -1.0));
    CHECK(flat.norm == 1.0);
    CHECK(flat.semi_minor == 0.0);
    CHECK(flat.contains(Complex(0.5, 0.0)));
    CHECK_FALSE(flat.contains(Complex(0.5, 0.1)));
  }
  SECTION("rejects +-I and non-involutions") {
    CHECK_THROWS_AS(ellipse_of(ComplexMatrix::Identity(3, 3)), ValidationError);
    CHECK_THROWS_AS(ellipse_of(ComplexMatrix(-ComplexMatrix::Identity(2, 2))),
                    ValidationError);
    CHECK_THROWS_AS(ellipse_of(real2x2(1.0, 1.0, 1.0, 1.0)), ValidationError);
  }
}

TEST_CASE("inverse numerical range on a 2x2 block") {
  const ComplexMatrix t = norm_minimal_block();

  SECTION("frozen targets") {
    const ComplexVector ui = inverse_range_2x2(t, Complex(0.0, 1.0));
    CHECK(std::abs(ui(0) - Complex(1.0 / kRoot2)) < 1e-12);
    CHECK(std::abs(ui(1) - Complex(0.0, 1.0 / kRoot2)) < 1e-12);

    const ComplexVector u1 = inverse_range_2x2(t, Complex(1.0, 0.0));
    CHECK(u1(0).real() == Catch::Approx(std::cos(kPi / 8.0)).margin(1e-12));
    CHECK(u1(1).real() == Catch::Approx(std::sin(kPi / 8.0)).margin(1e-12));

    const ComplexVector u0 = inverse_range_2x2(t, Complex(0.0, 0.0));
    CHECK(u0(0) == Complex(1.0));
    CHECK(u0(1) == Complex(0.0));
  }

  SECTION("round trips every interior target") {
    for (int xi = 1; xi <= 5; ++xi) {
      const double x = xi / 5.0;
      const ComplexMatrix block = real2x2(0.0, 1.0 / x, x, 0.0);
      const double major = (1.0 / x + x) / 2.0;
      const double minor = (1.0 / x - x) / 2.0;
      for (int ti = 0; ti < 20; ++ti) {
        const double spread = 0.04 + 0.93 * ti / 20.0;
        const double dir = 2.0 * kPi * ti / 20.0;
        const Complex target(spread * major * std::cos(dir), spread * minor * std::sin(dir));
        const ComplexVector u = inverse_range_2x2(block, target);
        CHECK(std::abs(u.norm() - 1.0) < 1e-12);
        CHECK(std::abs((u.adjoint() * block * u)(0, 0) - target) < 1e-12);
      }
    }
  }

  SECTION("degenerate block sweeps a segment") {
    const ComplexMatrix flip = real2x2(0.0, 1.0, 1.0, 0.0);
    const ComplexVector u = inverse_range_2x2(flip, Complex(0.7, 0.0));
    CHECK(std::abs((u.adjoint() * flip * u)(0, 0) - Complex(0.7)) < 1e-12);
    CHECK_THROWS_AS(inverse_range_2x2(flip, Complex(0.3, 0.2)), ValidationError);
  }

  SECTION("rejects targets outside and malformed blocks") {
    CHECK_THROWS_AS(inverse_range_2x2(t, Complex(1.5, 0.0)), ValidationError);
    CHECK_THROWS_AS(inverse_range_2x2(real2x2(0.5, 1.0, 1.0, 0.0), Complex(0.0, 0.0)),
                    ValidationError);
    CHECK_THROWS_AS(inverse_range_2x2(real2x2(0.0, 1.0, -1.0, 0.0), Complex(0.0, 0.0)),
                    ValidationError);
    ComplexMatrix skew(2, 2);
    skew << Complex(0.0), Complex(0.0, 1.0), Complex(1.0), Complex(0.0);
    CHECK_THROWS_AS(inverse_range_2x2(skew, Complex(0.0, 0.0)), ValidationError);
    CHECK_THROWS_AS(inverse_range_2x2(ComplexMatrix::Zero(3, 3), Complex(0.0, 0.0)),
                    ValidationError);
  }
}

TEST_CASE("halmos dilation is unitary with the contraction in the corner") {
  SECTION("frozen scalars") {
    const DilationResult zero = halmos_dilation(scalar(Complex(0.0)));
    CHECK(max_abs(zero.matrix - real2x2(0.0, -1.0, 1.0, 0.0)) < 1e-14);
    CHECK(zero.kind == DilationKind::unitary);
    CHECK(zero.corner_dim == 1);
    const DilationResult one = halmos_dilation(scalar(Complex(1.0)));
    CHECK(max_abs(one.matrix - ComplexMatrix::Identity(2, 2)) < 1e-7);
  }
  SECTION("random contractions") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const ComplexMatrix a = random_contraction(3, 100 + seed);
      const DilationResult h = halmos_dilation(a);
      CHECK(h.matrix.rows() == 6);
      CHECK(is_unitary(h.matrix, Tolerance{1e-9, 1e-9}));
      CHECK(max_abs(h.matrix.topLeftCorner(3, 3) - a) == 0.0);
    }
  }
  CHECK_THROWS_AS(halmos_dilation(scalar(Complex(1.5))), ValidationError);
}

TEST_CASE("involution dilation squares to the identity at norm 1 + sqrt(2)") {
  SECTION("frozen scalar i") {
    const DilationResult d = involution_dilation(scalar(Complex(0.0, 1.0)));
    CHECK(d.matrix.rows() == 4);
    CHECK(d.corner_dim == 1);
    CHECK(d.kind == DilationKind::involution);
    CHECK(std::abs(d.matrix(0, 0) - Complex(0.0, 1.0)) < 1e-12);
    CHECK(max_abs(d.matrix * d.matrix - ComplexMatrix::Identity(4, 4)) < 1e-12);
    CHECK(operator_norm(d.matrix) == Catch::Approx(1.0 + kRoot2).margin(1e-12));
  }
  SECTION("random contractions") {
    for (Index n : {1, 2, 3}) {
      const ComplexMatrix a = random_contraction(n, 200 + static_cast<std::uint64_t>(n));
      const DilationResult d = involution_dilation(a);
      CHECK(d.matrix.rows() == 4 * n);
      CHECK(max_abs(d.matrix * d.matrix - ComplexMatrix::Identity(4 * n, 4 * n)) < 1e-11);
      CHECK(max_abs(d.matrix.topLeftCorner(n, n) - a) < 1e-11);
      CHECK(operator_norm(d.matrix) == Catch::Approx(1.0 + kRoot2).margin(1e-11));
    }
  }
  CHECK_THROWS_AS(involution_dilation(real2x2(1.0, 2.0, 0.0, -1.0)), ValidationError);
}

TEST_CASE("structured double-size dilations square to the identity") {
  // These identities hold for every square A, contraction or not.
  Prng prng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const ComplexMatrix a = 2.5 * ginibre(3, 3, prng);
    const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
    const DilationResult sym = s_a_dilation(a);
    const DilationResult tri = t_a_dilation(a);
    const DilationResult swapped = partial_transpose_dilation(a);
    CHECK(max_abs(sym.matrix * sym.matrix - id) < 1e-11);
    CHECK(max_abs(tri.matrix * tri.matrix - id) < 1e-11);
    CHECK(max_abs(swapped.matrix * swapped.matrix - id) < 1e-11);
    CHECK(max_abs(sym.matrix.topLeftCorner(3, 3) - a) == 0.0);
    CHECK(max_abs(tri.matrix.topLeftCorner(3, 3) - a) == 0.0);
    CHECK(max_abs(swapped.matrix.topLeftCorner(3, 3) - a) == 0.0);
  }
}

TEST_CASE("norm bounds of the symmetric dilation over contractions") {
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const ComplexMatrix a = random_contraction(4, 300 + seed);
    const DilationResult d = s_a_dilation(a);
    CHECK(operator_norm(d.matrix) <= 3.0 + 1e-10);
    const double hs2 = hs_norm(d.matrix) * hs_norm(d.matrix);
    CHECK(hs2 <= 24.0 + 1e-10);
  }
  // Equality in the Hilbert-Schmidt bound at A = I.
  const DilationResult at_identity = s_a_dilation(ComplexMatrix::Identity(4, 4));
  CHECK(hs_norm(at_identity.matrix) * hs_norm(at_identity.matrix) ==
        Catch::Approx(24.0).margin(1e-12));
}

TEST_CASE("one-parameter family of symmetric dilations") {
  SECTION("frozen scalar case") {
    const DilationResult d = s_a_family(scalar(Complex(2.0)), 0.0);
    CHECK(max_abs(d.matrix - real2x2(2.0, 2.0, -3.0, -2.0)) < 1e-12);
    // Away from x = 1 the square is generally not the identity.
    CHECK_FALSE(is_involution(d.matrix, Tolerance{1e-6, 1e-6}));
  }
  SECTION("parameter 1 recovers the symmetric dilation") {
    Prng prng(23);
    ComplexMatrix a = ginibre(3, 3, prng);
    a = a * a.adjoint() + 0.1 * ComplexMatrix::Identity(3, 3);  // spectrum off the cut
    const DilationResult family = s_a_family(a, 1.0);
    const DilationResult plain = s_a_dilation(a);
    CHECK(max_abs(family.matrix - plain.matrix) < 1e-12);
    CHECK(is_involution(family.matrix, Tolerance{1e-9, 1e-9}));
  }
  SECTION("fractional powers keep the corner and kind") {
    ComplexMatrix a(2, 2);
    a << Complex(4.0), Complex(1.0), Complex(0.0), Complex(9.0);
    const DilationResult d = s_a_family(a, 0.5);
    CHECK(max_abs(d.matrix.topLeftCorner(2, 2) - a) == 0.0);
    CHECK(d.corner_dim == 2);
    // Off-diagonal blocks carry I + A^{1/2} and I - A^{3/2}.
    const ComplexMatrix half = principal_power(a, 0.5);
    CHECK(max_abs(d.matrix.topRightCorner(2, 2) -
                  (ComplexMatrix::Identity(2, 2) + half)) < 1e-12);
  }
  SECTION("rejects spectra on the branch cut") {
    CHECK_THROWS_AS(s_a_family(scalar(Complex(-2.0)), 0.5), ValidationError);
    CHECK_THROWS_AS(s_a_family(ComplexMatrix::Zero(2, 2), 0.5), ValidationError);
  }
}
