#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "mgw/evaluate.hpp"
#include "mgw/permutation.hpp"
#include "mgw/structure.hpp"

using namespace mgw;

namespace {

// S_3 as an explicit table, metric = normalized Hamming distance.
TableStructure s3_table() {
  std::vector<Permutation> elems;
  for (std::uint64_t i = 0; i < factorial(3); ++i) elems.push_back(permutation_at(3, i));
  std::vector<std::string> names;
  std::vector<std::vector<std::uint32_t>> op(6, std::vector<std::uint32_t>(6));
  std::vector<std::vector<Rational>> metric(6, std::vector<Rational>(6));
  for (std::uint32_t a = 0; a < 6; ++a) {
    names.push_back(elems[a].to_cycle_string());
    for (std::uint32_t b = 0; b < 6; ++b) {
      const Permutation prod = compose(elems[a], elems[b]);
      for (std::uint32_t c = 0; c < 6; ++c)
        if (elems[c] == prod) op[a][b] = c;
      metric[a][b] = hamming_distance(elems[a], elems[b]);
    }
  }
  return TableStructure(std::move(names), std::move(op), std::move(metric));
}

}  // namespace

TEST_CASE("cyclic group of order 3 loads from json") {
  const char* text = R"({
    "elements": ["e", "a", "b"],
    "op": [[0,1,2],[1,2,0],[2,0,1]],
    "metric": [["0","2/3","2/3"],["2/3","0","2/3"],["2/3","2/3","0"]]
  })";
  const TableStructure t = TableStructure::from_json(text);
  CHECK(t.size() == 3);
  CHECK(t.identity() == 0);
  CHECK(t.inverse(1) == 2);
  CHECK(t.compose(1, 1) == 2);
  CHECK(t.distance(0, 2) == Rational(2, 3));
}

TEST_CASE("table validation rejects broken structures") {
  // not associative (and no identity row/column structure)
  CHECK_THROWS_AS(TableStructure({"e", "a"}, {{0, 1}, {1, 1}}, {{Rational(0), Rational(1)},
                                                                {Rational(1), Rational(0)}}),
                  std::invalid_argument);
  // metric fails to separate points
  CHECK_THROWS_AS(TableStructure({"e", "a"}, {{0, 1}, {1, 0}}, {{Rational(0), Rational(0)},
                                                                {Rational(0), Rational(0)}}),
                  std::invalid_argument);
  // metric not bi-invariant: Z_3 with two different nonzero values
  CHECK_THROWS_AS(TableStructure({"e", "a", "b"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
                                 {{Rational(0), Rational(1, 3), Rational(2, 3)},
                                  {Rational(1, 3), Rational(0), Rational(1, 3)},
                                  {Rational(2, 3), Rational(1, 3), Rational(0)}}),
                  std::invalid_argument);
  // metric value out of range
  CHECK_THROWS_AS(TableStructure({"e", "a", "b"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
                                 {{Rational(0), Rational(2), Rational(2)},
                                  {Rational(2), Rational(0), Rational(2)},
                                  {Rational(2), Rational(2), Rational(0)}}),
                  std::invalid_argument);
}

TEST_CASE("descriptors") {
  CHECK(MetricStructure::sym(5).descriptor() == "sym(5)");
  CHECK(MetricStructure::unitary(4, 10, 3).descriptor() == "unitary(4)");
  CHECK(MetricStructure::rank(3).descriptor() == "rank(3)");
  CHECK(MetricStructure::table(s3_table()).descriptor() == "table(6)");
  CHECK(MetricStructure::sym(5).exact_valued());
  CHECK_FALSE(MetricStructure::unitary(4, 10, 3).exact_valued());
}

TEST_CASE("unitary structures require a sample count") {
  CHECK_THROWS_AS(MetricStructure::unitary(4, 0, 0), std::invalid_argument);
}

TEST_CASE("table-backed S_3 agrees with the native sym structure") {
  const MetricStructure native = MetricStructure::sym(3);
  const MetricStructure tabled = MetricStructure::table(s3_table());
  for (const char* text : {"inf x. sup y. d(x*y, y*x)", "sup x. d(x, e)",
                           "inf x. sup y. min(2*d(comm(x, y), e), 1)",
                           "sup x. sup y. d(x, y) -. d(x, e)"}) {
    const Formula f = parse_formula(text);
    CHECK(std::get<Rational>(sigma2_value(native, f)) ==
          std::get<Rational>(sigma2_value(tabled, f)));
  }
}
