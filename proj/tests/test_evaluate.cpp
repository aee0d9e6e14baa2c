#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "mgw/evaluate.hpp"
#include "mgw/rng.hpp"

using namespace mgw;

namespace {

std::vector<Permutation> all_permutations(std::uint32_t n) {
  std::vector<Permutation> out;
  for (std::uint64_t i = 0; i < factorial(n); ++i) out.push_back(permutation_at(n, i));
  return out;
}

// Hand-rolled oracle for inf_x sup_y d(x*y, y*x): direct loops over S_n,
// touching none of the formula machinery.
Rational brute_abelian_defect(std::uint32_t n) {
  const auto carrier = all_permutations(n);
  bool have_min = false;
  Rational best_min(0);
  for (const auto& x : carrier) {
    Rational best_max(0);
    for (const auto& y : carrier) {
      const Rational v = hamming_distance(compose(x, y), compose(y, x));
      if (v > best_max) best_max = v;
    }
    if (!have_min || best_max < best_min) {
      best_min = best_max;
      have_min = true;
    }
  }
  return best_min;
}

Assignment assign(std::initializer_list<std::pair<std::string, Element>> list) {
  Assignment a;
  for (const auto& [k, v] : list) a.insert_or_assign(k, v);
  return a;
}

}  // namespace

TEST_CASE("quantifier-free evaluation on S_3") {
  const MetricStructure s3 = MetricStructure::sym(3);
  const Formula eta_body = parse_formula("min(2*d(comm(x, y), e), 1)");
  const Element x = Element(Permutation::from_cycles("(1 2)", 3));
  const Element y = Element(Permutation::from_cycles("(2 3)", 3));
  CHECK(std::get<Rational>(evaluate(s3, eta_body, assign({{"x", x}, {"y", y}}))) == 1);

  CHECK(std::get<Rational>(evaluate(s3, parse_formula("1/2"))) == Rational(1, 2));
  CHECK(std::get<Rational>(evaluate(s3, parse_formula("1- d(x, x)"), assign({{"x", x}}))) == 1);
}

TEST_CASE("evaluation error paths") {
  const MetricStructure s3 = MetricStructure::sym(3);
  try {
    evaluate(s3, parse_formula("d(x, e)"));
    FAIL("expected an unassigned-variable error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("unassigned free variable") != std::string::npos);
  }
  // wrong element kind in the assignment
  CHECK_THROWS_AS(
      evaluate(s3, parse_formula("d(x, e)"), assign({{"x", Element(std::uint32_t(0))}})),
      std::invalid_argument);
  // exhaustive quantifiers over a continuum
  const MetricStructure u3 = MetricStructure::unitary(3, 4, 0);
  CHECK_NOTHROW(sigma2_value(u3, parse_formula("sup x. d(x, e)")));
  CHECK_THROWS_AS(sigma2_value(MetricStructure::unitary(3, 4, 0), parse_formula("d(x, e)")),
                  std::invalid_argument);  // free variable in a sentence
}

TEST_CASE("sigma2 example values") {
  CHECK(std::get<Rational>(sigma2_value(
            MetricStructure::sym(3), parse_formula("inf x. sup y. min(2*d(comm(x, y), e), 1)"))) ==
        0);
  CHECK(std::get<Rational>(
            sigma2_value(MetricStructure::sym(3), parse_formula("sup x. d(x, e)"))) == 1);
  CHECK(std::get<Rational>(
            sigma2_value(MetricStructure::sym(4), parse_formula("inf x. sup y. d(x, y)"))) == 1);
}

TEST_CASE("pruned parallel kernel equals the serial reference evaluator") {
  for (std::uint32_t n = 2; n <= 4; ++n) {
    const MetricStructure s = MetricStructure::sym(n);
    for (const auto& [name, sentence] : builtin_sigma2_sentences()) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(std::get<Rational>(sigma2_value(s, sentence)) ==
            std::get<Rational>(evaluate(s, sentence)));
    }
  }
}

TEST_CASE("sigma2 agrees with a hand-rolled brute-force oracle") {
  const Formula f = parse_formula("inf x. sup y. d(x*y, y*x)");
  for (std::uint32_t n : {3u, 4u, 5u}) {
    CHECK(std::get<Rational>(sigma2_value(MetricStructure::sym(n), f)) ==
          brute_abelian_defect(n));
  }
}

TEST_CASE("sigma2 works on the rank structure") {
  // x = e commutes with everything, so the rank order formula infimum is 0
  const Formula f = parse_formula("inf x. sup y. min(3*d(x*y, y*x), 1)");
  CHECK(std::get<Rational>(sigma2_value(MetricStructure::rank(3), f)) == 0);
}

TEST_CASE("budget is enforced") {
  EvalOptions tight;
  tight.budget = 10;
  CHECK_THROWS_AS(
      sigma2_value(MetricStructure::sym(4), parse_formula("inf x. sup y. d(x, y)"), tight),
      BudgetExceeded);
  CHECK_THROWS_AS(
      evaluate(MetricStructure::sym(4), parse_formula("inf x. sup y. d(x, y)"), {}, tight),
      BudgetExceeded);
}

TEST_CASE("sampled evaluation is deterministic and bounded") {
  const MetricStructure u = MetricStructure::unitary(4, 12, 99);
  const Formula f = parse_formula("inf x. sup y. d(x*y, y*x)");
  const double v1 = std::get<double>(sigma2_value(u, f));
  const double v2 = std::get<double>(sigma2_value(u, f));
  CHECK(v1 == v2);
  CHECK(v1 >= 0.0);
  CHECK(v1 <= 1.0);

  EvalOptions refine;
  refine.refine_steps = 3;
  const double v3 = std::get<double>(sigma2_value(u, f, refine));
  CHECK(v3 <= v1 + 1e-12);  // refinement can only improve the estimate
}

TEST_CASE("sampled sym mode matches exhaustive for constant-valued sentences") {
  const MetricStructure sampled = MetricStructure::sym(4, EvalMode::sampled(20, 5));
  CHECK(std::get<Rational>(sigma2_value(sampled, parse_formula("inf x. d(x, x)"))) == 0);
}

TEST_CASE("uniform continuity spot check") {
  const MetricStructure s6 = MetricStructure::sym(6);
  const char* bodies[] = {
      "min(2*d(comm(x, y), e), 1)",
      "d(x*y, y*x) -. d(x, e)",
      "max(d(x, y), 1- d(x*x, e))",
      "3*d(inv(x)*y, e)",
  };
  Rng rng(77);
  for (const char* text : bodies) {
    const Formula f = parse_formula(text);
    const Rational lx = lipschitz_modulus(f, "x");
    for (int trial = 0; trial < 40; ++trial) {
      const Permutation x = random_permutation(6, rng);
      const Permutation y = random_permutation(6, rng);
      const Permutation x2 = compose(x, random_permutation(6, rng));
      const Rational v1 = std::get<Rational>(
          evaluate(s6, f, assign({{"x", Element(x)}, {"y", Element(y)}})));
      const Rational v2 = std::get<Rational>(
          evaluate(s6, f, assign({{"x", Element(x2)}, {"y", Element(y)}})));
      const Rational delta = hamming_distance(x, x2);
      const Rational diff = v1 > v2 ? Rational(v1 - v2) : Rational(v2 - v1);
      CHECK(diff <= lx * delta);
    }
  }
}

TEST_CASE("convergence scan") {
  SUBCASE("constant-one series") {
    const auto points =
        convergence_scan(parse_formula("sup x. d(x, e)"), Family::Sym, {2, 3, 4, 5, 6});
    for (const auto& p : points) {
      CHECK(std::get<Rational>(p.value) == 1);
      CHECK(p.mode == "exhaustive");
    }
  }
  SUBCASE("identity witness keeps the commutator sentence at zero") {
    const auto points = convergence_scan(
        parse_formula("inf x. sup y. min(2*d(comm(x, y), e), 1)"), Family::Sym, {2, 3, 4});
    for (const auto& p : points) CHECK(std::get<Rational>(p.value) == 0);
  }
  SUBCASE("matches the brute-force oracle") {
    const auto points =
        convergence_scan(parse_formula("inf x. sup y. d(x*y, y*x)"), Family::Sym, {3, 4, 5});
    for (const auto& p : points) CHECK(std::get<Rational>(p.value) == brute_abelian_defect(p.n));
  }
  SUBCASE("unitary family requires sampling") {
    CHECK_THROWS_AS(
        convergence_scan(parse_formula("sup x. d(x, e)"), Family::Unitary, {3}, 0, 0),
        std::invalid_argument);
    const auto points =
        convergence_scan(parse_formula("sup x. d(x, e)"), Family::Unitary, {3}, 8, 1);
    CHECK(points.size() == 1);
    CHECK(points[0].mode == "sampled(8;seed=1)");
    CHECK(std::get<double>(points[0].value) > 0.0);
  }
  SUBCASE("non-sigma2 input is rejected") {
    CHECK_THROWS_AS(
        convergence_scan(parse_formula("sup y. inf x. d(x, y)"), Family::Sym, {3}),
        std::invalid_argument);
  }
}

TEST_CASE("embedding defect") {
  const auto as_perm = [](const Element& e) { return std::get<Permutation>(e); };
  SUBCASE("an isometric isomorphism has defect zero") {
    Rng rng(41);
    const Permutation conjugator = random_permutation(4, rng);
    const auto map = [&](const Element& e) {
      return Element(compose(compose(conjugator, as_perm(e)), inverse(conjugator)));
    };
    const Value d = embedding_defect(map, MetricStructure::sym(4), MetricStructure::sym(4));
    CHECK(std::get<Rational>(d) == 0);
  }
  SUBCASE("padding S_2 into S_3 distorts the metric by 1/3") {
    const auto map = [&](const Element& e) { return Element(pad_embed(as_perm(e), 3)); };
    const Value d = embedding_defect(map, MetricStructure::sym(2), MetricStructure::sym(3));
    CHECK(std::get<Rational>(d) == Rational(1, 3));
  }
  SUBCASE("the diagonal embedding with n = km is isometric") {
    const auto map = [&](const Element& e) { return Element(diagonal_embed(as_perm(e), 2, 6)); };
    const Value d = embedding_defect(map, MetricStructure::sym(3), MetricStructure::sym(6));
    CHECK(std::get<Rational>(d) == 0);
  }
  SUBCASE("sampled pairs on large degrees") {
    const auto map = [&](const Element& e) { return Element(pad_embed(as_perm(e), 40)); };
    const Value d = embedding_defect(map, MetricStructure::sym(30), MetricStructure::sym(40),
                                     DefectSampling{50, 3});
    CHECK(std::get<Rational>(d) <= Rational(1));
    CHECK(std::get<Rational>(d) >= 0);
  }
}

TEST_CASE("discrete shadow check") {
  const MetricStructure s4 = MetricStructure::sym(4);
  const Term s = Term::product(Term::variable("x"), Term::variable("y"));
  const Term t = Term::product(Term::variable("y"), Term::variable("x"));
  SUBCASE("identity map") {
    CHECK(discrete_shadow_check(s4, [](const Rational& x) { return x; }, s, t));
  }
  SUBCASE("truncated doubling has the same zero set") {
    const auto q = [](const Rational& x) {
      const Rational two = 2 * x;
      return two > 1 ? Rational(1) : two;
    };
    CHECK(discrete_shadow_check(s4, q, s, t));
  }
  SUBCASE("a map vanishing away from zero is rejected at validation") {
    const auto bad = [](const Rational& x) {
      return x > Rational(1, 2) ? Rational(x - Rational(1, 2)) : Rational(0);
    };
    CHECK_THROWS_AS(discrete_shadow_check(s4, bad, s, t), std::invalid_argument);
  }
}

TEST_CASE("builtin sentences parse and include the pinned values") {
  const auto sentences = builtin_sigma2_sentences();
  CHECK(sentences.size() == 10);
  bool have_commutator = false, have_displacement = false;
  for (const auto& [name, f] : sentences) {
    CHECK(sigma2_form(f).has_value());
    if (name == "commutator_gap") have_commutator = true;
    if (name == "max_displacement") have_displacement = true;
  }
  CHECK(have_commutator);
  CHECK(have_displacement);
}
