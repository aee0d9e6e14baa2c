// Formula evaluation over metric structures.
//
// Two evaluation paths exist on purpose:
//   evaluate()      - straightforward recursive evaluator; quantifiers loop
//                     the carrier with no pruning and no parallelism. This is
//                     the serial reference the fast path is tested against.
//   sigma2_value()  - specialized inf/sup kernel for sentences in Sigma_2
//                     form; the outer inf loop runs under OpenMP and the
//                     inner sup is pruned against the running minimum. Both
//                     paths return exactly equal values.
//
// Values are exact rationals on sym/rank/table structures and doubles on
// unitary structures.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mgw/formula.hpp"
#include "mgw/structure.hpp"

namespace mgw {

using Value = std::variant<Rational, double>;
using Assignment = std::map<std::string, Element>;

double value_to_double(const Value& v);
std::string value_to_string(const Value& v);  // "p/q" when exact, decimal otherwise
bool value_is_exact(const Value& v);

inline constexpr std::uint64_t kDefaultBudget = 500'000'000;

struct EvalOptions {
  std::uint64_t budget = kDefaultBudget;  // max quantifier-free evaluations
  int refine_steps = 0;                   // local refinement rounds on sampled inf
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(double needed, std::uint64_t limit);
  double needed;
  std::uint64_t limit;
};

Value evaluate(const MetricStructure& structure, const Formula& formula,
               const Assignment& assignment = {}, const EvalOptions& options = {});

// Requires sigma2_form(formula) to succeed and the formula to be a sentence.
Value sigma2_value(const MetricStructure& structure, const Formula& formula,
                   const EvalOptions& options = {});

struct ScanPoint {
  std::uint32_t n;
  Value value;
  std::string mode;
};

// Evaluates a Sigma_2 sentence across a family for each n. samples == 0 means
// exhaustive (rejected for the unitary family, which has no enumeration).
std::vector<ScanPoint> convergence_scan(const Formula& formula, Family family,
                                        const std::vector<std::uint32_t>& ns,
                                        std::uint64_t samples = 0, std::uint64_t seed = 0,
                                        const EvalOptions& options = {});

// Largest violation of the group operations and the metric by `map` over
// pairs from M (exhaustive when feasible within the budget, else sampled).
struct DefectSampling {
  std::uint64_t pairs = 0;  // 0 = exhaustive
  std::uint64_t seed = 0;
};
Value embedding_defect(const std::function<Element(const Element&)>& map,
                       const MetricStructure& domain, const MetricStructure& codomain,
                       const DefectSampling& sampling = {}, const EvalOptions& options = {});

// Verifies q(d(s,t)) == 0 exactly when s and t evaluate to the same element,
// over all assignments of the terms' free variables (or a sample of them).
// q must satisfy q(0) = 0 and q(x) > 0 for x > 0; this is validated on the
// grid {k/32 : 0 <= k <= 32} before any evaluation runs.
bool discrete_shadow_check(const MetricStructure& structure,
                           const std::function<Rational(const Rational&)>& q, const Term& s,
                           const Term& t, const EvalOptions& options = {});

// Named Sigma_2 sentences used by the test matrix and the benchmark.
std::vector<std::pair<std::string, Formula>> builtin_sigma2_sentences();

}  // namespace mgw
