#include "mgw/experiments.hpp"

#include <stdexcept>

#include "mgw/csv.hpp"
#include "mgw/order_property.hpp"
#include "mgw/rng.hpp"
#include "mgw/rounding.hpp"

namespace mgw {

namespace {

struct ChainRun {
  MetricStructure structure;
  Formula psi;
  std::vector<std::vector<Element>> tuples;
  ChainReport report;
};

ChainRun run_chain(Family family, std::uint32_t n, std::uint32_t l, const Rational& epsilon) {
  std::vector<std::vector<Element>> tuples;
  Formula psi = family == Family::Rank ? rank_order_formula() : eta_formula();
  MetricStructure structure = [&] {
    switch (family) {
      case Family::Sym: {
        for (auto& [a, b] : sym_chain(n, l)) tuples.push_back({Element(a), Element(b)});
        return MetricStructure::sym(n);
      }
      case Family::Unitary: {
        for (auto& [a, b] : unitary_chain(n, l)) tuples.push_back({Element(a), Element(b)});
        return MetricStructure::unitary(n, 1, 0);  // psi is quantifier-free
      }
      case Family::Rank: {
        for (auto& [a, b] : rank_chain(n, l)) tuples.push_back({Element(a), Element(b)});
        return MetricStructure::rank(n);
      }
    }
    throw std::logic_error("unknown family");
  }();
  ChainReport report = chain_check(structure, psi, epsilon, tuples);
  return ChainRun{std::move(structure), std::move(psi), std::move(tuples), std::move(report)};
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Sym: return "sym";
    case Family::Unitary: return "unitary";
    case Family::Rank: return "rank";
  }
  return "?";
}

}  // namespace

ExperimentResult chains_experiment(Family family, std::uint32_t n, std::uint32_t l,
                                   const Rational& epsilon) {
  const ChainRun run = run_chain(family, n, l, epsilon);
  const bool exact = run.structure.exact_valued();
  std::string csv =
      csv_row({"family", "n", "l", "epsilon", "i", "j", "value", "value_float", "check"});
  for (std::size_t i = 0; i < run.report.values.size(); ++i)
    for (std::size_t j = 0; j < run.report.values.size(); ++j) {
      const Value& v = run.report.values[i][j];
      std::string check;
      if (i < j) {
        const bool ok = exact ? std::get<Rational>(v) <= epsilon
                              : value_to_double(v) <= to_double(epsilon) + kFloatTol;
        check = ok ? "pass" : "fail";
      } else if (i > j) {
        const bool ok = exact ? std::get<Rational>(v) >= Rational(1) - epsilon
                              : value_to_double(v) >= 1.0 - to_double(epsilon) - kFloatTol;
        check = ok ? "pass" : "fail";
      }
      csv += csv_row({family_name(family), std::to_string(n), std::to_string(l),
                      rat_to_string(epsilon), std::to_string(i + 1), std::to_string(j + 1),
                      value_to_string(v), double_to_string(value_to_double(v)), check});
    }
  return ExperimentResult{std::move(csv), run.report.valid};
}

std::string chains_witness_json(Family family, std::uint32_t n, std::uint32_t l,
                                const Rational& epsilon) {
  const ChainRun run = run_chain(family, n, l, epsilon);
  return chain_witness_json(run.structure, run.psi, epsilon, run.tuples, run.report);
}

ExperimentResult round_experiment(std::uint32_t m, std::uint32_t k, const Rational& beta,
                                  std::uint64_t samples, std::uint64_t seed) {
  const std::uint32_t degree = m * k;
  std::vector<std::string> rows(samples);
  std::vector<char> sample_ok(samples, 1);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(s));
    const Permutation sigma = random_permutation(degree, rng);
    const RoundingResult result = round_to_subgroup(sigma, m, k, beta);
    const bool within = result.bound_satisfied();
    if (result.guaranteed && !within) sample_ok[s] = 0;
    rows[s] = csv_row({"round", std::to_string(m), std::to_string(k), "0",
                       std::to_string(seed + static_cast<std::uint64_t>(s)),
                       rat_to_string(result.achieved_distance),
                       rat_to_decimal(result.achieved_distance), result.bound.text(),
                       double_to_string(result.bound.approx()),
                       result.guaranteed ? "yes" : "no", within ? "yes" : "no"});
  }
  std::string csv = csv_row({"kind", "m", "k", "r", "seed", "achieved", "achieved_float", "bound",
                             "bound_float", "guaranteed", "within_bound"});
  bool ok = true;
  for (std::uint64_t s = 0; s < samples; ++s) {
    csv += rows[s];
    ok = ok && sample_ok[s];
  }
  return ExperimentResult{std::move(csv), ok};
}

ExperimentResult uround_experiment(std::uint32_t k, std::uint32_t m, std::uint32_t r,
                                   std::uint64_t samples, std::uint64_t seed) {
  const std::uint32_t dim = k * m + r;
  std::vector<std::string> rows(samples);
  std::vector<char> sample_ok(samples, 1);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(s));
    const UnitaryElement c = haar_unitary(dim, rng);
    const UnitaryRoundingResult result = unitary_round(c, k, m, r);
    const bool within = result.achieved_distance <= result.bound;
    if (!within || !result.repair_unique) sample_ok[s] = 0;
    rows[s] = csv_row({"uround", std::to_string(m), std::to_string(k), std::to_string(r),
                       std::to_string(seed + static_cast<std::uint64_t>(s)),
                       double_to_string(result.achieved_distance),
                       double_to_string(result.achieved_distance),
                       double_to_string(result.bound), double_to_string(result.bound), "yes",
                       within ? "yes" : "no"});
  }
  std::string csv = csv_row({"kind", "m", "k", "r", "seed", "achieved", "achieved_float", "bound",
                             "bound_float", "guaranteed", "within_bound"});
  bool ok = true;
  for (std::uint64_t s = 0; s < samples; ++s) {
    csv += rows[s];
    ok = ok && sample_ok[s];
  }
  return ExperimentResult{std::move(csv), ok};
}

ExperimentResult converge_experiment(Family family, const std::string& formula_text,
                                     const std::vector<std::uint32_t>& ns, std::uint64_t samples,
                                     std::uint64_t seed, const EvalOptions& options) {
  const Formula formula = parse_formula(formula_text);
  const auto points = convergence_scan(formula, family, ns, samples, seed, options);
  std::string csv = csv_row({"family", "n", "mode", "value", "value_float"});
  for (const auto& point : points)
    csv += csv_row({family_name(family), std::to_string(point.n), point.mode,
                    value_to_string(point.value), double_to_string(value_to_double(point.value))});
  return ExperimentResult{std::move(csv), true};
}

ExperimentResult defect_experiment(const std::string& map_kind, std::uint32_t m, std::uint32_t k,
                                   std::uint32_t n, std::uint64_t samples, std::uint64_t seed,
                                   const EvalOptions& options) {
  std::function<Element(const Element&)> map;
  if (map_kind == "pad") {
    if (n < m) throw std::invalid_argument("defect: pad needs n >= m");
    map = [n](const Element& e) { return Element(pad_embed(std::get<Permutation>(e), n)); };
  } else if (map_kind == "diag") {
    if (k == 0 || n < m * k) throw std::invalid_argument("defect: diag needs n >= m*k");
    map = [n, k](const Element& e) {
      return Element(diagonal_embed(std::get<Permutation>(e), k, n));
    };
  } else {
    throw std::invalid_argument("defect: map must be 'pad' or 'diag'");
  }
  const MetricStructure source = MetricStructure::sym(m);
  const MetricStructure target = MetricStructure::sym(n);
  const Value defect =
      embedding_defect(map, source, target, DefectSampling{samples, seed}, options);
  std::string csv = csv_row({"map", "m", "k", "n", "samples", "seed", "defect", "defect_float"});
  csv += csv_row({map_kind, std::to_string(m), std::to_string(map_kind == "diag" ? k : 0),
                  std::to_string(n), std::to_string(samples), std::to_string(seed),
                  value_to_string(defect), double_to_string(value_to_double(defect))});
  return ExperimentResult{std::move(csv), true};
}

std::vector<std::uint32_t> parse_n_range(const std::string& text) {
  auto parse_one = [](const std::string& s) -> std::uint32_t {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size() || v == 0) throw std::invalid_argument("bad n value '" + s + "'");
    return static_cast<std::uint32_t>(v);
  };
  const std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint32_t lo = parse_one(text.substr(0, dots));
    const std::uint32_t hi = parse_one(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("bad range '" + text + "'");
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!part.empty()) out.push_back(parse_one(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty n range");
  return out;
}

}  // namespace mgw
