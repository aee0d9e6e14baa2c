#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mgw/permutation.hpp"
#include "mgw/rng.hpp"

using namespace mgw;

namespace {

Permutation cyc(const std::string& text, std::uint32_t degree) {
  return Permutation::from_cycles(text, degree);
}

}  // namespace

TEST_CASE("compose applies the right factor first") {
  const Permutation a = cyc("(1 2)", 3);
  const Permutation b = cyc("(2 3)", 3);
  // pointwise: 1 -> 2, 2 -> 3, 3 -> 1
  CHECK(compose(a, b) == cyc("(1 2 3)", 3));
}

TEST_CASE("identity and inverse laws") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(8));
    const Permutation s = random_permutation(n, rng);
    const Permutation e = Permutation::identity(n);
    CHECK(compose(s, inverse(s)) == e);
    CHECK(compose(inverse(s), s) == e);
    CHECK(compose(e, s) == s);
    CHECK(compose(s, e) == s);
  }
}

TEST_CASE("compose is associative") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));
    const Permutation a = random_permutation(n, rng);
    const Permutation b = random_permutation(n, rng);
    const Permutation c = random_permutation(n, rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("inverse examples") {
  CHECK(inverse(cyc("(1 2 3)", 3)) == cyc("(1 3 2)", 3));
  CHECK(inverse(Permutation::identity(4)) == Permutation::identity(4));
  const Permutation t = cyc("(2 5)", 5);
  CHECK(inverse(t) == t);
}

TEST_CASE("commutator examples") {
  CHECK(commutator(cyc("(1 2)", 3), cyc("(2 3)", 3)) == cyc("(1 3 2)", 3));
  Rng rng(13);
  const Permutation a = random_permutation(6, rng);
  CHECK(commutator(a, Permutation::identity(6)) == Permutation::identity(6));
  CHECK(commutator(a, a) == Permutation::identity(6));
}

TEST_CASE("degree mismatch is rejected") {
  const Permutation a = Permutation::identity(3);
  const Permutation b = Permutation::identity(4);
  CHECK_THROWS_AS(compose(a, b), std::invalid_argument);
  CHECK_THROWS_AS(commutator(a, b), std::invalid_argument);
  CHECK_THROWS_AS(hamming_distance(a, b), std::invalid_argument);
}

TEST_CASE("hamming distance values") {
  CHECK(hamming_distance(cyc("(1 2)", 3), Permutation::identity(3)) == Rational(2, 3));
  Rng rng(14);
  const Permutation s = random_permutation(7, rng);
  CHECK(hamming_distance(s, s) == 0);
}

TEST_CASE("hamming distance is a bi-invariant metric") {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));
    const Permutation a = random_permutation(n, rng);
    const Permutation b = random_permutation(n, rng);
    const Permutation c = random_permutation(n, rng);
    const Rational d_ab = hamming_distance(a, b);
    CHECK(d_ab == hamming_distance(b, a));
    CHECK((d_ab == 0) == (a == b));
    CHECK(hamming_distance(a, c) <= d_ab + hamming_distance(b, c));
    // two-sided translation invariance
    CHECK(hamming_distance(compose(c, a), compose(c, b)) == d_ab);
    CHECK(hamming_distance(compose(a, c), compose(b, c)) == d_ab);
  }
}

TEST_CASE("cycle profile") {
  const CycleProfile p = cycle_profile(Permutation::from_cycles("(1 2 3)(4 5)", 6));
  CHECK(p.count(3) == 1);
  CHECK(p.count(2) == 1);
  CHECK(p.count(1) == 1);
  CHECK(p.width() == 3);
  CHECK(p.total_cycles() == 3);

  const CycleProfile id = cycle_profile(Permutation::identity(5));
  CHECK(id.count(1) == 5);
  CHECK(id.width() == 1);

  const CycleProfile full = cycle_profile(cyc("(1 2 3 4 5 6 7)", 7));
  CHECK(full.count(7) == 1);
  CHECK(full.width() == 7);
}

TEST_CASE("cycle profile is a conjugation invariant") {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(8));
    const Permutation s = random_permutation(n, rng);
    const Permutation r = random_permutation(n, rng);
    const Permutation conj = compose(compose(r, s), inverse(r));
    CHECK(cycle_profile(conj) == cycle_profile(s));
  }
}

TEST_CASE("product action on one factor is the factor") {
  Rng rng(17);
  const Permutation s = random_permutation(3, rng);
  CHECK(product_action({s}) == s);
}

TEST_CASE("product action matches direct tuple enumeration for l=2") {
  // independent oracle: act coordinatewise on pairs (i1,i2), big-endian index
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const Permutation s1 = random_permutation(3, rng);
    const Permutation s2 = random_permutation(3, rng);
    std::vector<std::uint32_t> expected(9);
    for (std::uint32_t i1 = 0; i1 < 3; ++i1)
      for (std::uint32_t i2 = 0; i2 < 3; ++i2)
        expected[i1 * 3 + i2] = s1.apply(i1) * 3 + s2.apply(i2);
    CHECK(product_action({s1, s2}) == Permutation(expected));
  }
}

TEST_CASE("product action is a homomorphism, exhaustively for l=2") {
  std::vector<Permutation> all3;
  std::vector<std::uint32_t> im = {0, 1, 2};
  do {
    all3.push_back(Permutation(im));
  } while (std::next_permutation(im.begin(), im.end()));
  REQUIRE(all3.size() == 6);
  for (const auto& s1 : all3)
    for (const auto& s2 : all3)
      for (const auto& t1 : all3)
        for (const auto& t2 : all3) {
          const Permutation lhs = compose(product_action({s1, s2}), product_action({t1, t2}));
          const Permutation rhs = product_action({compose(s1, t1), compose(s2, t2)});
          CHECK(lhs == rhs);
        }
}

TEST_CASE("product action cycle structure example") {
  const Permutation a = product_action({cyc("(1 2)", 3), Permutation::identity(3)});
  const CycleProfile p = cycle_profile(a);
  CHECK(a.degree() == 9);
  CHECK(p.count(2) == 3);
  CHECK(p.count(1) == 3);
}

TEST_CASE("product action rejects wrong factor degrees") {
  CHECK_THROWS_AS(product_action({Permutation::identity(4)}), std::invalid_argument);
  CHECK_THROWS_AS(product_action({}), std::invalid_argument);
}

TEST_CASE("diagonal embed") {
  const Permutation three_cycle = cyc("(1 2 3)", 3);
  SUBCASE("k=1, n=m is the identity embedding") {
    CHECK(diagonal_embed(three_cycle, 1, 3) == three_cycle);
  }
  SUBCASE("pages are disjoint copies") {
    CHECK(diagonal_embed(three_cycle, 2, 6) == Permutation::from_cycles("(1 2 3)(4 5 6)", 6));
  }
  SUBCASE("distance scales by km/n") {
    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
      const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.below(4));
      const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(3));
      const std::uint32_t n = m * k + static_cast<std::uint32_t>(rng.below(4));
      const Permutation s = random_permutation(m, rng);
      const Permutation t = random_permutation(m, rng);
      CHECK(hamming_distance(diagonal_embed(s, k, n), diagonal_embed(t, k, n)) ==
            Rational(m * k, n) * hamming_distance(s, t));
    }
  }
  SUBCASE("isometric when n = km, homomorphism and injectivity exhaustive") {
    std::vector<Permutation> all3;
    std::vector<std::uint32_t> im = {0, 1, 2};
    do {
      all3.push_back(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
    std::set<std::vector<std::uint32_t>> images;
    for (const auto& s : all3) {
      images.insert(diagonal_embed(s, 2, 6).images());
      for (const auto& t : all3) {
        CHECK(diagonal_embed(compose(s, t), 2, 6) ==
              compose(diagonal_embed(s, 2, 6), diagonal_embed(t, 2, 6)));
        CHECK(hamming_distance(diagonal_embed(s, 2, 6), diagonal_embed(t, 2, 6)) ==
              hamming_distance(s, t));
      }
    }
    CHECK(images.size() == 6);
  }
  SUBCASE("n < km is rejected") {
    CHECK_THROWS_AS(diagonal_embed(three_cycle, 2, 5), std::invalid_argument);
  }
}

TEST_CASE("pad embed") {
  CHECK(pad_embed(Permutation::identity(3), 7) == Permutation::identity(7));
  CHECK(hamming_distance(pad_embed(cyc("(1 2)", 2), 3), Permutation::identity(3)) ==
        Rational(2, 3));
  Rng rng(20);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.below(5));
    const std::uint32_t n = m + static_cast<std::uint32_t>(rng.below(5));
    const Permutation s = random_permutation(m, rng);
    const Permutation t = random_permutation(m, rng);
    CHECK(hamming_distance(pad_embed(s, n), pad_embed(t, n)) ==
          Rational(m, n) * hamming_distance(s, t));
    CHECK(pad_embed(compose(s, t), n) == compose(pad_embed(s, n), pad_embed(t, n)));
  }
  CHECK_THROWS_AS(pad_embed(Permutation::identity(5), 4), std::invalid_argument);
}

TEST_CASE("serialization round trips") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(9));
    const Permutation s = random_permutation(n, rng);
    CHECK(Permutation::from_one_line(s.to_one_line()) == s);
    CHECK(Permutation::from_cycles(s.to_cycle_string(), n) == s);
  }
  CHECK(Permutation::from_cycles("(1 2 3)(4 5)", 6).to_cycle_string() == "(1 2 3)(4 5)");
  CHECK(Permutation::identity(4).to_cycle_string() == "()");
  CHECK(Permutation::from_one_line("3: 2 1 3") == cyc("(1 2)", 3));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Permutation::from_one_line("3: 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_line("3: 1 2 2"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_line("x"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2)(2 3)", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 1)", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 5)", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<std::uint32_t>{0, 0}), std::invalid_argument);
}

TEST_CASE("lexicographic unranking agrees with next_permutation") {
  std::vector<std::uint32_t> im = {0, 1, 2, 3};
  std::uint64_t index = 0;
  do {
    CHECK(permutation_at(4, index) == Permutation(im));
    ++index;
  } while (std::next_permutation(im.begin(), im.end()));
  CHECK(index == factorial(4));
  CHECK_THROWS_AS(permutation_at(4, 24), std::out_of_range);
}
