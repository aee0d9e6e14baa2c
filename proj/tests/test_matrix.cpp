#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mgw/matrix.hpp"
#include "mgw/rng.hpp"

using namespace mgw;

namespace {

RationalMatrix random_int_matrix(std::uint32_t n, Rng& rng, int span = 5) {
  RationalMatrix m(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      m.at(i, j) = Rational(static_cast<long>(rng.below(2 * span + 1)) - span);
  return m;
}

}  // namespace

TEST_CASE("perm_matrix basics") {
  CHECK(hs_distance(perm_matrix(Permutation::identity(4)), UnitaryElement::identity_of(4)) ==
        doctest::Approx(0.0));
  const UnitaryElement swap = perm_matrix(Permutation::from_cycles("(1 2)", 2));
  CHECK(swap.matrix()(0, 1) == Complex(1, 0));
  CHECK(swap.matrix()(1, 0) == Complex(1, 0));
  CHECK(swap.matrix()(0, 0) == Complex(0, 0));
  CHECK(swap.matrix()(1, 1) == Complex(0, 0));
}

TEST_CASE("perm_matrix is a homomorphism") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(15));
    const Permutation s = random_permutation(n, rng);
    const Permutation t = random_permutation(n, rng);
    CHECK(hs_distance(perm_matrix(s) * perm_matrix(t), perm_matrix(compose(s, t))) <= 1e-12);
  }
}

TEST_CASE("hs_distance values") {
  const UnitaryElement eye = UnitaryElement::identity_of(5);
  CHECK(hs_distance(eye, eye) == doctest::Approx(0.0));
  UnitaryElement minus(CMatrix(-CMatrix::Identity(5, 5)));
  CHECK(hs_distance(eye, minus) == doctest::Approx(1.0));
  // metric compatibility with the Hamming distance through sigma -> A_sigma
  const UnitaryElement a = perm_matrix(Permutation::from_cycles("(1 2)", 2));
  CHECK(hs_distance(a, UnitaryElement::identity_of(2)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("metric compatibility identity holds for random pairs") {
  Rng rng(32);
  for (std::uint32_t n = 2; n <= 64; n += 13) {
    for (int trial = 0; trial < 20; ++trial) {
      const Permutation s = random_permutation(n, rng);
      const Permutation t = random_permutation(n, rng);
      const double lhs = hs_distance(perm_matrix(s), perm_matrix(t));
      const double rhs = std::sqrt(to_double(hamming_distance(s, t)) / 2.0);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
  }
}

TEST_CASE("hs_distance is bi-invariant on unitaries") {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(63));
    const UnitaryElement a = haar_unitary(n, rng);
    const UnitaryElement b = haar_unitary(n, rng);
    const UnitaryElement u = haar_unitary(n, rng);
    const double d = hs_distance(a, b);
    CHECK(std::abs(hs_distance(u * a, u * b) - d) <= 1e-9);
    CHECK(std::abs(hs_distance(a * u, b * u) - d) <= 1e-9);
    CHECK(std::abs(hs_distance(b, a) - d) <= 1e-9);
  }
}

TEST_CASE("rank distance basics") {
  Rng rng(34);
  const RationalMatrix a = random_int_matrix(6, rng);
  CHECK(rank_distance(a, a) == 0);

  // rk(I_5 - A_sigma) for a 5-cycle: one cycle, so 1 - 1/5
  const RationalMatrix c5 = perm_matrix_rational(Permutation::from_cycles("(1 2 3 4 5)", 5));
  CHECK(rank_distance(RationalMatrix::identity_of(5), c5) == Rational(4, 5));

  // (123)(45) in S_6 has 3 cycles counting the fixed point
  const RationalMatrix mixed = perm_matrix_rational(Permutation::from_cycles("(1 2 3)(4 5)", 6));
  CHECK(rank_distance(RationalMatrix::identity_of(6), mixed) == Rational(1, 2));
}

TEST_CASE("rank of I - A_sigma equals 1 - cycles/n") {
  Rng rng(35);
  for (std::uint32_t n : {3u, 10u, 25u, 50u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Permutation s = random_permutation(n, rng);
      const Rational expected =
          Rational(1) - Rational(cycle_profile(s).total_cycles(), n);
      CHECK(rank_distance(RationalMatrix::identity_of(n), perm_matrix_rational(s)) == expected);
    }
  }
}

TEST_CASE("rank distance satisfies the triangle inequality") {
  Rng rng(36);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(11));
    const RationalMatrix a = random_int_matrix(n, rng);
    const RationalMatrix b = random_int_matrix(n, rng);
    const RationalMatrix c = random_int_matrix(n, rng);
    CHECK(rank_distance(a, c) <= rank_distance(a, b) + rank_distance(b, c));
    CHECK(rank_distance(a, b) == rank_distance(b, a));
  }
}

TEST_CASE("exact rank handles rational entries") {
  RationalMatrix m(3);
  m.at(0, 0) = Rational(1, 2);
  m.at(0, 1) = Rational(1, 3);
  m.at(1, 0) = Rational(3, 2);
  m.at(1, 1) = Rational(1);  // second row = 3 * first row
  m.at(2, 2) = Rational(7, 5);
  CHECK(exact_rank(m) == 2);
}

TEST_CASE("rational_inverse") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(5));
    const RationalMatrix a = perm_matrix_rational(random_permutation(n, rng));
    CHECK(a * rational_inverse(a) == RationalMatrix::identity_of(n));
  }
  RationalMatrix singular(2);
  singular.at(0, 0) = 1;
  singular.at(1, 0) = 1;
  CHECK_THROWS_AS(rational_inverse(singular), std::domain_error);
}

TEST_CASE("kron") {
  CHECK((kron(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)) - CMatrix::Identity(6, 6))
            .norm() == doctest::Approx(0.0));
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const CMatrix block = kron(CMatrix::Identity(2, 2), swap);
  CHECK(block.rows() == 4);
  CHECK(block(0, 1) == Complex(1, 0));
  CHECK(block(2, 3) == Complex(1, 0));
  CHECK(block(0, 3) == Complex(0, 0));

  Rng rng(38);
  const UnitaryElement u = haar_unitary(3, rng);
  const UnitaryElement v = haar_unitary(4, rng);
  CHECK_NOTHROW(UnitaryElement(kron(u.matrix(), v.matrix())));  // unitarity validated
}

TEST_CASE("nearest_unitary") {
  Rng rng(39);
  SUBCASE("fixes unitaries") {
    const UnitaryElement u = haar_unitary(6, rng);
    CHECK(hs_distance(nearest_unitary(u.matrix()), u) <= 1e-9);
  }
  SUBCASE("positive diagonal rounds to the identity") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    CHECK(hs_distance(nearest_unitary(d), UnitaryElement::identity_of(2)) <= 1e-9);
  }
  SUBCASE("minimality against random unitaries") {
    for (int trial = 0; trial < 5; ++trial) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));
      CMatrix a = haar_unitary(n, rng).matrix();
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          a(i, j) += Complex(0.05 * rng.gaussian(), 0.05 * rng.gaussian());
      const UnitaryElement best = nearest_unitary(a);
      for (int probe = 0; probe < 20; ++probe) {
        const UnitaryElement w = haar_unitary(n, rng);
        CHECK(frobenius(a - best.matrix()) <= frobenius(a - w.matrix()) + 1e-9);
      }
    }
  }
  SUBCASE("repair bound on near-unitary inputs") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(15));
      CMatrix a = haar_unitary(n, rng).matrix();
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          a(i, j) += Complex(0.02 * rng.gaussian(), 0.02 * rng.gaussian());
      const CMatrix b = nearest_unitary(a).matrix();
      const double lhs = normalized_hs(a - b) * normalized_hs(a - b);
      const double rhs = normalized_hs(a.adjoint() * a - CMatrix::Identity(n, n));
      CHECK(lhs <= 36.0 * rhs + 1e-12);
    }
  }
  SUBCASE("singular input is rejected") {
    CHECK_THROWS_AS(nearest_unitary(CMatrix::Zero(3, 3)), std::domain_error);
  }
}

TEST_CASE("unitarity is validated on construction") {
  CMatrix bad = CMatrix::Identity(3, 3);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(UnitaryElement{bad}, std::invalid_argument);
}

TEST_CASE("matrix json round trip") {
  Rng rng(40);
  const CMatrix a = haar_unitary(4, rng).matrix();
  const CMatrix back = matrix_from_json(matrix_to_json(a));
  CHECK((a - back).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(matrix_from_json("{\"dim\": 2, \"entries\": [[1,0]]}"), std::invalid_argument);
}

TEST_CASE("haar sampling is deterministic per seed") {
  Rng r1(7), r2(7);
  CHECK((haar_unitary(5, r1).matrix() - haar_unitary(5, r2).matrix()).norm() ==
        doctest::Approx(0.0));
}
