#include "mgw/structure.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace mgw {

namespace {

[[noreturn]] void reject(const std::string& why) {
  throw std::invalid_argument("TableStructure: " + why);
}

}  // namespace

TableStructure::TableStructure(std::vector<std::string> names,
                               std::vector<std::vector<std::uint32_t>> op,
                               std::vector<std::vector<Rational>> metric)
    : names_(std::move(names)), op_(std::move(op)), metric_(std::move(metric)) {
  const std::uint32_t n = static_cast<std::uint32_t>(names_.size());
  if (n == 0) reject("empty carrier");
  if (op_.size() != n || metric_.size() != n) reject("table sizes do not match carrier");
  for (std::uint32_t i = 0; i < n; ++i) {
    if (op_[i].size() != n || metric_[i].size() != n) reject("ragged table row");
    for (std::uint32_t j = 0; j < n; ++j)
      if (op_[i][j] >= n) reject("op entry out of range");
  }
  // identity
  bool found = false;
  for (std::uint32_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::uint32_t j = 0; j < n && ok; ++j) ok = op_[e][j] == j && op_[j][e] == j;
    if (ok) {
      identity_ = e;
      found = true;
      break;
    }
  }
  if (!found) reject("no identity element");
  // associativity
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (op_[op_[a][b]][c] != op_[a][op_[b][c]]) reject("operation is not associative");
  // inverses
  inv_.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    bool ok = false;
    for (std::uint32_t b = 0; b < n; ++b)
      if (op_[a][b] == identity_ && op_[b][a] == identity_) {
        inv_[a] = b;
        ok = true;
        break;
      }
    if (!ok) reject("element without inverse");
  }
  // metric axioms, diameter <= 1, bi-invariance
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const Rational& d = metric_[a][b];
      if (d < 0 || d > 1) reject("metric value outside [0,1]");
      if ((d == 0) != (a == b)) reject("metric does not separate points");
      if (d != metric_[b][a]) reject("metric is not symmetric");
      for (std::uint32_t c = 0; c < n; ++c) {
        if (metric_[a][c] > d + metric_[b][c]) reject("triangle inequality fails");
        if (metric_[op_[c][a]][op_[c][b]] != d || metric_[op_[a][c]][op_[b][c]] != d)
          reject("metric is not bi-invariant");
      }
    }
}

TableStructure TableStructure::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::string> names = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::vector<std::uint32_t>> op =
      j.at("op").get<std::vector<std::vector<std::uint32_t>>>();
  std::vector<std::vector<Rational>> metric;
  for (const auto& row : j.at("metric")) {
    std::vector<Rational> r;
    for (const auto& cell : row)
      r.push_back(cell.is_string() ? parse_rational(cell.get<std::string>())
                                   : parse_rational(cell.dump()));
    metric.push_back(std::move(r));
  }
  return TableStructure(std::move(names), std::move(op), std::move(metric));
}

MetricStructure MetricStructure::sym(std::uint32_t n, EvalMode mode) {
  if (n == 0) throw std::invalid_argument("sym structure: n must be >= 1");
  return MetricStructure(SymDesc{n}, mode);
}

MetricStructure MetricStructure::unitary(std::uint32_t n, std::uint64_t samples,
                                         std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("unitary structure: n must be >= 1");
  if (samples == 0) throw std::invalid_argument("unitary structure: needs a sample count");
  return MetricStructure(UnitaryDesc{n}, EvalMode::sampled(samples, seed));
}

MetricStructure MetricStructure::rank(std::uint32_t n, EvalMode mode) {
  if (n == 0) throw std::invalid_argument("rank structure: n must be >= 1");
  return MetricStructure(RankDesc{n}, mode);
}

MetricStructure MetricStructure::table(TableStructure table, EvalMode mode) {
  return MetricStructure(std::move(table), mode);
}

std::string MetricStructure::descriptor() const {
  struct Visitor {
    std::string operator()(const SymDesc& d) const { return "sym(" + std::to_string(d.n) + ")"; }
    std::string operator()(const UnitaryDesc& d) const {
      return "unitary(" + std::to_string(d.n) + ")";
    }
    std::string operator()(const RankDesc& d) const { return "rank(" + std::to_string(d.n) + ")"; }
    std::string operator()(const TableStructure& t) const {
      return "table(" + std::to_string(t.size()) + ")";
    }
  };
  return std::visit(Visitor{}, desc_);
}

}  // namespace mgw
