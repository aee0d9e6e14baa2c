#include "mgw/order_property.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mgw {

namespace {

std::uint64_t pow3(std::uint32_t l) {
  std::uint64_t p = 1;
  for (std::uint32_t i = 0; i < l; ++i) p *= 3;
  return p;
}

void check_chain_degree(std::uint32_t n, std::uint32_t l, const char* who) {
  if (l == 0) throw std::invalid_argument(std::string(who) + ": l must be >= 1");
  if (pow3(l) > n)
    throw std::invalid_argument(std::string(who) + ": n must be at least 3^l (" +
                                std::to_string(pow3(l)) + "), got " + std::to_string(n));
}

}  // namespace

std::vector<std::pair<Permutation, Permutation>> base_pairs(std::uint32_t l) {
  if (l == 0) throw std::invalid_argument("base_pairs: l must be >= 1");
  if (pow3(l) > (1ull << 31)) throw std::invalid_argument("base_pairs: 3^l too large");
  const Permutation e3 = Permutation::identity(3);
  const Permutation swap12 = Permutation::from_cycles("(1 2)", 3);
  const Permutation swap23 = Permutation::from_cycles("(2 3)", 3);
  std::vector<std::pair<Permutation, Permutation>> out;
  out.reserve(l);
  for (std::uint32_t i = 1; i <= l; ++i) {
    std::vector<Permutation> sigma_factors(l, e3);
    for (std::uint32_t j = 0; j < i; ++j) sigma_factors[j] = swap12;  // (12) in slots 1..i
    std::vector<Permutation> tau_factors(l, e3);
    tau_factors[i - 1] = swap23;  // (23) in slot i
    out.emplace_back(product_action(sigma_factors), product_action(tau_factors));
  }
  return out;
}

std::vector<std::pair<Permutation, Permutation>> sym_chain(std::uint32_t n, std::uint32_t l) {
  check_chain_degree(n, l, "sym_chain");
  const std::uint32_t k = n / static_cast<std::uint32_t>(pow3(l));
  std::vector<std::pair<Permutation, Permutation>> out;
  out.reserve(l);
  for (auto& [sigma, tau] : base_pairs(l))
    out.emplace_back(diagonal_embed(sigma, k, n), diagonal_embed(tau, k, n));
  return out;
}

std::vector<std::pair<UnitaryElement, UnitaryElement>> unitary_chain(std::uint32_t n,
                                                                     std::uint32_t l) {
  check_chain_degree(n, l, "unitary_chain");
  std::vector<std::pair<UnitaryElement, UnitaryElement>> out;
  out.reserve(l);
  for (auto& [sigma, tau] : sym_chain(n, l))
    out.emplace_back(perm_matrix(sigma), perm_matrix(tau));
  return out;
}

std::vector<std::pair<RationalMatrix, RationalMatrix>> rank_chain(std::uint32_t n,
                                                                  std::uint32_t l) {
  check_chain_degree(n, l, "rank_chain");
  std::vector<std::pair<RationalMatrix, RationalMatrix>> out;
  out.reserve(l);
  for (auto& [sigma, tau] : sym_chain(n, l))
    out.emplace_back(perm_matrix_rational(sigma), perm_matrix_rational(tau));
  return out;
}

Formula eta_formula() { return parse_formula("min(2*d(comm(x1, y2), e), 1)"); }

Formula rank_order_formula() { return parse_formula("min(3*d(x1*y2, y2*x1), 1)"); }

namespace {

bool at_most(const Value& v, const Rational& bound, bool exact) {
  if (exact) return std::get<Rational>(v) <= bound;
  return value_to_double(v) <= to_double(bound) + kFloatTol;
}

bool at_least(const Value& v, const Rational& bound, bool exact) {
  if (exact) return std::get<Rational>(v) >= bound;
  return value_to_double(v) >= to_double(bound) - kFloatTol;
}

}  // namespace

ChainReport chain_check(const MetricStructure& structure, const Formula& psi,
                        const Rational& epsilon, const std::vector<std::vector<Element>>& tuples) {
  if (epsilon < 0 || epsilon >= Rational(1, 2))
    throw std::invalid_argument("chain_check: epsilon must lie in [0, 1/2)");
  const std::size_t l = tuples.size();
  std::size_t arity = l ? tuples[0].size() : 0;
  for (const auto& t : tuples)
    if (t.size() != arity) throw std::invalid_argument("chain_check: ragged tuple list");
  if (l && arity == 0) throw std::invalid_argument("chain_check: tuples must be non-empty");

  // psi's free variables must fit the x1..xm / y1..ym convention
  for (const auto& v : free_variables(psi)) {
    bool ok = false;
    if (v.size() >= 2 && (v[0] == 'x' || v[0] == 'y')) {
      std::size_t idx = 0;
      bool digits = true;
      for (std::size_t c = 1; c < v.size(); ++c) {
        if (v[c] < '0' || v[c] > '9') {
          digits = false;
          break;
        }
        idx = idx * 10 + static_cast<std::size_t>(v[c] - '0');
      }
      ok = digits && idx >= 1 && idx <= arity;
    }
    if (!ok)
      throw std::invalid_argument("chain_check: free variable '" + v +
                                  "' does not match the tuple arity " + std::to_string(arity) +
                                  " (expected x1..x" + std::to_string(arity) + ", y1..y" +
                                  std::to_string(arity) + ")");
  }

  ChainReport report;
  report.values.assign(l, std::vector<Value>(l, Value(Rational(0))));

  auto psi_at = [&](std::size_t a, std::size_t b) {
    Assignment assignment;
    for (std::size_t i = 0; i < arity; ++i) {
      assignment.insert_or_assign("x" + std::to_string(i + 1), tuples[a][i]);
      assignment.insert_or_assign("y" + std::to_string(i + 1), tuples[b][i]);
    }
    return evaluate(structure, psi, assignment);
  };

  // independent entries; safe to fill in parallel
#pragma omp parallel for schedule(dynamic) collapse(2) if (l >= 4)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(l); ++a)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(l); ++b)
      report.values[a][b] = psi_at(a, b);

  const bool exact = structure.exact_valued();
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      const bool ok = at_most(report.values[i][j], epsilon, exact) &&
                      at_least(report.values[j][i], Rational(1) - epsilon, exact);
      if (!ok) {
        report.valid = false;
        report.violation_i = i;
        report.violation_j = j;
        report.psi_ij = report.values[i][j];
        report.psi_ji = report.values[j][i];
        return report;
      }
    }
  return report;
}

std::string element_to_string(const Element& e) {
  struct Visitor {
    std::string operator()(const Permutation& p) const { return p.to_one_line(); }
    std::string operator()(const UnitaryElement& u) const { return matrix_to_json(u.matrix()); }
    std::string operator()(const RationalMatrix& m) const {
      std::string out = std::to_string(m.dim()) + ":";
      for (std::uint32_t i = 0; i < m.dim(); ++i)
        for (std::uint32_t j = 0; j < m.dim(); ++j) out += " " + rat_to_string(m.at(i, j));
      return out;
    }
    std::string operator()(std::uint32_t idx) const { return "#" + std::to_string(idx); }
  };
  return std::visit(Visitor{}, e);
}

std::string chain_witness_json(const MetricStructure& structure, const Formula& psi,
                               const Rational& epsilon,
                               const std::vector<std::vector<Element>>& tuples,
                               const ChainReport& report) {
  nlohmann::json j;
  j["structure"] = structure.descriptor();
  j["epsilon"] = rat_to_string(epsilon);
  j["formula_text"] = to_string(psi);
  j["valid"] = report.valid;
  nlohmann::json jtuples = nlohmann::json::array();
  for (const auto& tuple : tuples) {
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& e : tuple) jt.push_back(element_to_string(e));
    jtuples.push_back(std::move(jt));
  }
  j["tuples"] = std::move(jtuples);
  nlohmann::json jvals = nlohmann::json::array();
  for (const auto& row : report.values) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& v : row) jr.push_back(value_to_string(v));
    jvals.push_back(std::move(jr));
  }
  j["values_matrix"] = std::move(jvals);
  return j.dump(2);
}

}  // namespace mgw
