#include "mgw/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mgw/rng.hpp"

namespace mgw {

double value_to_double(const Value& v) {
  if (std::holds_alternative<Rational>(v)) return to_double(std::get<Rational>(v));
  return std::get<double>(v);
}

std::string value_to_string(const Value& v) {
  if (std::holds_alternative<Rational>(v)) return rat_to_string(std::get<Rational>(v));
  return double_to_string(std::get<double>(v));
}

bool value_is_exact(const Value& v) { return std::holds_alternative<Rational>(v); }

BudgetExceeded::BudgetExceeded(double needed_, std::uint64_t limit_)
    : std::runtime_error("evaluation budget exceeded: would take about " +
                         double_to_string(needed_) + " quantifier-free evaluations, limit is " +
                         std::to_string(limit_) + " (use sampled mode or raise the budget)"),
      needed(needed_),
      limit(limit_) {}

namespace {

// ------------------------------------------------------------- domains

struct SymDomain {
  using Elem = Permutation;
  using Val = Rational;
  static constexpr bool kEnumerable = true;
  std::uint32_t n;

  Elem identity_elem() const { return Permutation::identity(n); }
  Elem compose(const Elem& a, const Elem& b) const { return mgw::compose(a, b); }
  Elem invert(const Elem& a) const { return mgw::inverse(a); }
  Val distance(const Elem& a, const Elem& b) const { return hamming_distance(a, b); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::uint64_t size() const { return factorial(n); }
  Elem element_at(std::uint64_t i) const { return permutation_at(n, i); }
  Elem sample(Rng& rng) const { return random_permutation(n, rng); }
};

struct RankDomain {
  using Elem = RationalMatrix;
  using Val = Rational;
  static constexpr bool kEnumerable = true;
  std::uint32_t n;

  Elem identity_elem() const { return RationalMatrix::identity_of(n); }
  Elem compose(const Elem& a, const Elem& b) const { return a * b; }
  Elem invert(const Elem& a) const { return rational_inverse(a); }
  Val distance(const Elem& a, const Elem& b) const { return rank_distance(a, b); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  // Enumerable sub-carrier: the permutation matrices inside M_n.
  std::uint64_t size() const { return factorial(n); }
  Elem element_at(std::uint64_t i) const { return perm_matrix_rational(permutation_at(n, i)); }
  Elem sample(Rng& rng) const { return perm_matrix_rational(random_permutation(n, rng)); }
};

struct UnitaryDomain {
  using Elem = UnitaryElement;
  using Val = double;
  static constexpr bool kEnumerable = false;
  std::uint32_t n;

  Elem identity_elem() const { return UnitaryElement::identity_of(n); }
  Elem compose(const Elem& a, const Elem& b) const { return a * b; }
  Elem invert(const Elem& a) const { return a.adjoint(); }
  Val distance(const Elem& a, const Elem& b) const { return hs_distance(a, b); }
  bool equal(const Elem& a, const Elem& b) const { return hs_distance(a, b) <= kFloatTol; }
  std::uint64_t size() const {
    throw std::invalid_argument("exhaustive evaluation is not available on unitary structures");
  }
  Elem element_at(std::uint64_t) const { return identity_elem(); }  // unreachable
  Elem sample(Rng& rng) const { return haar_unitary(n, rng); }
};

struct TableDomain {
  using Elem = std::uint32_t;
  using Val = Rational;
  static constexpr bool kEnumerable = true;
  const TableStructure* table;

  Elem identity_elem() const { return table->identity(); }
  Elem compose(Elem a, Elem b) const { return table->compose(a, b); }
  Elem invert(Elem a) const { return table->inverse(a); }
  Val distance(Elem a, Elem b) const { return table->distance(a, b); }
  bool equal(Elem a, Elem b) const { return a == b; }
  std::uint64_t size() const { return table->size(); }
  Elem element_at(std::uint64_t i) const { return static_cast<Elem>(i); }
  Elem sample(Rng& rng) const { return static_cast<Elem>(rng.below(table->size())); }
};

template <class D>
MetricStructure::Desc domain_desc();

SymDomain make_domain(const MetricStructure::SymDesc& d) { return SymDomain{d.n}; }
UnitaryDomain make_domain(const MetricStructure::UnitaryDesc& d) { return UnitaryDomain{d.n}; }
RankDomain make_domain(const MetricStructure::RankDesc& d) { return RankDomain{d.n}; }
TableDomain make_domain(const TableStructure& t) { return TableDomain{&t}; }

// ------------------------------------------------------------- value ops

template <class V>
struct ValOps;

template <>
struct ValOps<Rational> {
  static Rational from_rational(const Rational& r) { return r; }
  static Rational one_minus(const Rational& x) { return Rational(1) - x; }
  static Rational trunc_sub(const Rational& a, const Rational& b) {
    return a > b ? Rational(a - b) : Rational(0);
  }
  static Rational scale(const Rational& q, const Rational& x) {
    Rational s = q * x;
    return s > 1 ? Rational(1) : s;
  }
  static double approx_down(const Rational& x) {
    return std::nextafter(to_double(x), -std::numeric_limits<double>::infinity());
  }
  static double approx_up(const Rational& x) {
    return std::nextafter(to_double(x), std::numeric_limits<double>::infinity());
  }
};

template <>
struct ValOps<double> {
  static double from_rational(const Rational& r) { return to_double(r); }
  static double one_minus(double x) { return 1.0 - x; }
  static double trunc_sub(double a, double b) { return a > b ? a - b : 0.0; }
  static double scale(const Rational& q, double x) { return std::min(to_double(q) * x, 1.0); }
  static double approx_down(double x) { return x; }
  static double approx_up(double x) { return x; }
};

// ------------------------------------------------------------- carriers

// The set a quantifier ranges over: the whole carrier in exhaustive mode, a
// fixed deterministic draw in sampled mode. Small exhaustive carriers are
// materialized once; large ones are unranked on the fly.
template <class D>
struct Carrier {
  const D* dom;
  std::uint64_t count = 0;
  std::vector<typename D::Elem> cache{};

  typename D::Elem get(std::uint64_t i) const {
    return cache.empty() ? dom->element_at(i) : cache[i];
  }
};

template <class D>
std::uint64_t cache_limit() {
  return std::is_same_v<D, RankDomain> ? 10'000 : 1'000'000;
}

template <class D>
Carrier<D> build_carrier(const D& dom, const EvalMode& mode) {
  Carrier<D> c{&dom};
  if (mode.kind == EvalMode::Kind::Sampled) {
    c.count = mode.samples;
    c.cache.reserve(mode.samples);
    for (std::uint64_t i = 0; i < mode.samples; ++i) {
      Rng rng = Rng::substream(mode.seed, i);
      c.cache.push_back(dom.sample(rng));
    }
    return c;
  }
  c.count = dom.size();
  if (c.count <= cache_limit<D>()) {
    c.cache.reserve(c.count);
    for (std::uint64_t i = 0; i < c.count; ++i) c.cache.push_back(dom.element_at(i));
  }
  return c;
}

// ------------------------------------------------------------- term eval

template <class D>
using Env = std::vector<std::pair<std::string, typename D::Elem>>;

template <class D>
typename D::Elem eval_term(const D& dom, const Term& t, const Env<D>& env) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      // innermost binding wins
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name()) return it->second;
      throw std::invalid_argument("unassigned free variable '" + t.name() + "'");
    }
    case Term::Kind::Identity: return dom.identity_elem();
    case Term::Kind::Inverse: return dom.invert(eval_term(dom, t.child(), env));
    case Term::Kind::Product:
      return dom.compose(eval_term(dom, t.lhs(), env), eval_term(dom, t.rhs(), env));
  }
  throw std::logic_error("unreachable term kind");
}

// --------------------------------------------------- recursive evaluator

double cost_estimate(const Formula& f, double carrier_count) {
  switch (f.kind()) {
    case Formula::Kind::Dist:
    case Formula::Kind::Const: return 1.0;
    case Formula::Kind::OneMinus:
    case Formula::Kind::Scale: return cost_estimate(f.child(), carrier_count);
    case Formula::Kind::TruncSub:
    case Formula::Kind::Min:
    case Formula::Kind::Max:
      return cost_estimate(f.lhs(), carrier_count) + cost_estimate(f.rhs(), carrier_count);
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: return carrier_count * cost_estimate(f.child(), carrier_count);
  }
  return 1.0;
}

// Plain recursion over the AST; quantifiers are full loops over the carrier.
// No pruning, no parallelism: this is the reference semantics.
template <class D>
typename D::Val eval_rec(const D& dom, const Carrier<D>& carrier, const Formula& f, Env<D>& env) {
  using Ops = ValOps<typename D::Val>;
  switch (f.kind()) {
    case Formula::Kind::Dist:
      return dom.distance(eval_term(dom, f.term_lhs(), env), eval_term(dom, f.term_rhs(), env));
    case Formula::Kind::Const: return Ops::from_rational(f.value());
    case Formula::Kind::OneMinus: return Ops::one_minus(eval_rec(dom, carrier, f.child(), env));
    case Formula::Kind::TruncSub:
      return Ops::trunc_sub(eval_rec(dom, carrier, f.lhs(), env),
                            eval_rec(dom, carrier, f.rhs(), env));
    case Formula::Kind::Min:
      return std::min(eval_rec(dom, carrier, f.lhs(), env), eval_rec(dom, carrier, f.rhs(), env));
    case Formula::Kind::Max:
      return std::max(eval_rec(dom, carrier, f.lhs(), env), eval_rec(dom, carrier, f.rhs(), env));
    case Formula::Kind::Scale: return Ops::scale(f.value(), eval_rec(dom, carrier, f.child(), env));
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: {
      const bool is_inf = f.kind() == Formula::Kind::Inf;
      if (carrier.count == 0) throw std::invalid_argument("empty carrier under a quantifier");
      env.emplace_back(f.var(), carrier.get(0));
      typename D::Val best = eval_rec(dom, carrier, f.child(), env);
      for (std::uint64_t i = 1; i < carrier.count; ++i) {
        env.back().second = carrier.get(i);
        typename D::Val v = eval_rec(dom, carrier, f.child(), env);
        if (is_inf ? (v < best) : (v > best)) best = v;
      }
      env.pop_back();
      return best;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

template <class D>
Env<D> env_from_assignment(const D&, const Assignment& assignment) {
  Env<D> env;
  env.reserve(assignment.size() + 4);
  for (const auto& [name, element] : assignment) {
    const auto* typed = std::get_if<typename D::Elem>(&element);
    if (!typed)
      throw std::invalid_argument("assignment for '" + name +
                                  "' holds an element of the wrong structure kind");
    env.emplace_back(name, *typed);
  }
  return env;
}

template <class D>
Value evaluate_impl(const D& dom, const EvalMode& mode, const Formula& f,
                    const Assignment& assignment, const EvalOptions& options) {
  const bool needs_carrier = !is_quantifier_free(f);
  Carrier<D> carrier{&dom};
  if (needs_carrier) {
    carrier = build_carrier(dom, mode);
    const double cost = cost_estimate(f, static_cast<double>(carrier.count));
    if (cost > static_cast<double>(options.budget)) throw BudgetExceeded(cost, options.budget);
  }
  Env<D> env = env_from_assignment(dom, assignment);
  return Value(eval_rec(dom, carrier, f, env));
}

// --------------------------------------------------------- sigma2 kernel

// Odometer over tuples of carrier indices.
inline void decode_indices(std::uint64_t flat, std::uint64_t base, std::size_t count,
                           std::uint64_t* out) {
  for (std::size_t i = count; i-- > 0;) {
    out[i] = flat % base;
    flat /= base;
  }
}

template <class D>
struct SupResult {
  typename D::Val value{};
  bool pruned = false;
};

// sup over all assignments of the sup variables, stopping early once the
// partial max can no longer fall below `prune_bound` (a conservative upper
// approximation of the running outer minimum).
template <class D>
SupResult<D> sup_scan(const D& dom, const Carrier<D>& carrier, const Formula& body, Env<D>& env,
                      std::size_t sup_slot_base, std::size_t sup_count, double prune_bound) {
  using Ops = ValOps<typename D::Val>;
  SupResult<D> result;
  if (sup_count == 0) {
    result.value = eval_rec(dom, carrier, body, env);
    return result;
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < sup_count; ++i) total *= carrier.count;
  std::vector<std::uint64_t> idx(sup_count);
  bool have = false;
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    decode_indices(flat, carrier.count, sup_count, idx.data());
    for (std::size_t i = 0; i < sup_count; ++i)
      env[sup_slot_base + i].second = carrier.get(idx[i]);
    typename D::Val v = eval_rec(dom, carrier, body, env);
    if (!have || v > result.value) {
      result.value = v;
      have = true;
    }
    if (Ops::approx_down(result.value) >= prune_bound) {
      result.pruned = true;
      return result;
    }
  }
  return result;
}

template <class D>
Value sigma2_impl(const D& dom, const EvalMode& mode, const Sigma2Form& s2,
                  const EvalOptions& options) {
  using Val = typename D::Val;
  using Ops = ValOps<Val>;
  const Carrier<D> carrier = build_carrier(dom, mode);
  if (carrier.count == 0) throw std::invalid_argument("empty carrier under a quantifier");

  const std::size_t n_inf = s2.inf_vars.size();
  const std::size_t n_sup = s2.sup_vars.size();
  {
    double cost = 1.0;
    for (std::size_t i = 0; i < n_inf + n_sup; ++i) cost *= static_cast<double>(carrier.count);
    if (cost > static_cast<double>(options.budget)) throw BudgetExceeded(cost, options.budget);
  }

  std::uint64_t outer_total = 1;
  for (std::size_t i = 0; i < n_inf; ++i) outer_total *= carrier.count;

  bool have_best = false;
  Val best{};
  std::uint64_t best_outer = 0;
  std::atomic<double> prune_bound{std::numeric_limits<double>::infinity()};

#pragma omp parallel
  {
    Env<D> env;
    env.reserve(n_inf + n_sup);
    const auto first = carrier.get(0);
    for (std::size_t i = 0; i < n_inf; ++i) env.emplace_back(s2.inf_vars[i], first);
    for (std::size_t i = 0; i < n_sup; ++i) env.emplace_back(s2.sup_vars[i], first);
    std::vector<std::uint64_t> inf_idx(n_inf);

#pragma omp for schedule(dynamic)
    for (std::int64_t outer = 0; outer < static_cast<std::int64_t>(outer_total); ++outer) {
      decode_indices(static_cast<std::uint64_t>(outer), carrier.count, n_inf, inf_idx.data());
      for (std::size_t i = 0; i < n_inf; ++i) env[i].second = carrier.get(inf_idx[i]);
      SupResult<D> sup = sup_scan(dom, carrier, s2.body, env, n_inf, n_sup,
                                  prune_bound.load(std::memory_order_relaxed));
      if (sup.pruned) continue;  // this x cannot lower the minimum
#pragma omp critical(mgw_sigma2_best)
      {
        const auto ou = static_cast<std::uint64_t>(outer);
        if (!have_best || sup.value < best || (sup.value == best && ou < best_outer)) {
          if (!have_best || sup.value < best) {
            best = sup.value;
            prune_bound.store(Ops::approx_up(best), std::memory_order_relaxed);
          }
          best_outer = ou;
          have_best = true;
        }
      }
    }
  }
  if (!have_best) throw std::logic_error("sigma2 kernel finished without a witness");

  // Optional local refinement of the sampled inf witness on unitary
  // structures: random multiplicative perturbations, coordinate by
  // coordinate, kept only when the inner sup over the same sample set drops.
  if constexpr (std::is_same_v<D, UnitaryDomain>) {
    if (options.refine_steps > 0 && n_inf > 0) {
      Env<D> env;
      const auto first = carrier.get(0);
      for (std::size_t i = 0; i < n_inf; ++i) env.emplace_back(s2.inf_vars[i], first);
      for (std::size_t i = 0; i < n_sup; ++i) env.emplace_back(s2.sup_vars[i], first);
      std::vector<std::uint64_t> inf_idx(n_inf);
      decode_indices(best_outer, carrier.count, n_inf, inf_idx.data());
      for (std::size_t i = 0; i < n_inf; ++i) env[i].second = carrier.get(inf_idx[i]);
      const double inf_limit = std::numeric_limits<double>::infinity();
      for (int step = 0; step < options.refine_steps; ++step) {
        const double eps = 0.5 / (1.0 + step);
        for (std::size_t slot = 0; slot < n_inf; ++slot) {
          Rng rng = Rng::substream(mode.seed ^ 0x5eedbeefULL, // refinement stream
                                   static_cast<std::uint64_t>(step) * n_inf + slot);
          CMatrix g(dom.n, dom.n);
          for (std::uint32_t c = 0; c < dom.n; ++c)
            for (std::uint32_t r = 0; r < dom.n; ++r)
              g(r, c) = Complex(rng.gaussian(), rng.gaussian());
          const CMatrix perturbed =
              env[slot].second.matrix() *
              polar_factor(CMatrix::Identity(dom.n, dom.n) + eps * g).unitary;
          UnitaryElement candidate(perturbed);
          std::swap(env[slot].second, candidate);
          const double v = sup_scan(dom, carrier, s2.body, env, n_inf, n_sup, inf_limit).value;
          if (v < best)
            best = v;
          else
            std::swap(env[slot].second, candidate);  // revert
        }
      }
    }
  }
  return Value(best);
}

// --------------------------------------------------------- defect & shadow

template <class DM, class DN>
Value defect_impl(const DM& dm, const EvalMode& mode_m, const DN& dn,
                  const std::function<Element(const Element&)>& map,
                  const DefectSampling& sampling, const EvalOptions& options) {
  constexpr bool exact = std::is_same_v<typename DM::Val, Rational> &&
                         std::is_same_v<typename DN::Val, Rational>;
  using Out = std::conditional_t<exact, Rational, double>;

  auto apply_map = [&](const typename DM::Elem& a) -> typename DN::Elem {
    Element out = map(Element(a));
    const auto* typed = std::get_if<typename DN::Elem>(&out);
    if (!typed)
      throw std::invalid_argument("embedding_defect: map returned an element of the wrong kind");
    return *typed;
  };

  Out defect = Out(0);
  auto bump = [&](const Out& v) {
    if (v > defect) defect = v;
  };
  auto as_double = [](const auto& v) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>)
      return to_double(v);
    else
      return v;
  };
  auto metric_gap = [&](const typename DM::Val& dv, const typename DN::Val& nv) -> Out {
    if constexpr (exact)
      return dv > nv ? Out(dv - nv) : Out(nv - dv);
    else
      return std::abs(as_double(dv) - as_double(nv));
  };
  auto to_out = [&](const typename DN::Val& v) -> Out {
    if constexpr (exact)
      return v;
    else
      return as_double(v);
  };

  // identity is a constant symbol of the language
  bump(to_out(dn.distance(apply_map(dm.identity_elem()), dn.identity_elem())));

  auto probe_pair = [&](const typename DM::Elem& a, const typename DM::Elem& b) {
    const auto fa = apply_map(a);
    const auto fb = apply_map(b);
    bump(metric_gap(dm.distance(a, b), dn.distance(fa, fb)));
    bump(to_out(dn.distance(dn.compose(fa, fb), apply_map(dm.compose(a, b)))));
    bump(to_out(dn.distance(apply_map(dm.invert(a)), dn.invert(fa))));
  };

  if (sampling.pairs == 0) {
    if constexpr (!DM::kEnumerable)
      throw std::invalid_argument(
          "embedding_defect: exhaustive pairs are not available on unitary structures");
    Carrier<DM> carrier = build_carrier(dm, EvalMode::exhaustive());
    const double cost = static_cast<double>(carrier.count) * static_cast<double>(carrier.count);
    if (cost > static_cast<double>(options.budget)) throw BudgetExceeded(cost, options.budget);
    for (std::uint64_t i = 0; i < carrier.count; ++i)
      for (std::uint64_t j = 0; j < carrier.count; ++j) probe_pair(carrier.get(i), carrier.get(j));
  } else {
    for (std::uint64_t s = 0; s < sampling.pairs; ++s) {
      Rng rng = Rng::substream(sampling.seed, s);
      const auto a = dm.sample(rng);
      const auto b = dm.sample(rng);
      probe_pair(a, b);
    }
  }
  (void)mode_m;
  return Value(defect);
}

template <class D>
bool shadow_impl(const D& dom, const EvalMode& mode,
                 const std::function<Rational(const Rational&)>& q, const Term& s, const Term& t,
                 const EvalOptions& options) {
  auto vars_set = free_variables(s);
  {
    auto more = free_variables(t);
    vars_set.insert(more.begin(), more.end());
  }
  const std::vector<std::string> vars(vars_set.begin(), vars_set.end());

  auto q_is_zero = [&](const typename D::Val& d) {
    if constexpr (std::is_same_v<typename D::Val, Rational>) {
      return q(d) == 0;
    } else {
      return q(Rational(d)) <= Rational(1, 1'000'000'000);
    }
  };

  auto consistent = [&](Env<D>& env) {
    const auto sv = eval_term(dom, s, env);
    const auto tv = eval_term(dom, t, env);
    return q_is_zero(dom.distance(sv, tv)) == dom.equal(sv, tv);
  };

  Env<D> env;
  for (const auto& v : vars) env.emplace_back(v, dom.identity_elem());

  if (mode.kind == EvalMode::Kind::Sampled) {
    for (std::uint64_t i = 0; i < mode.samples; ++i) {
      Rng rng = Rng::substream(mode.seed, i);
      for (std::size_t k = 0; k < vars.size(); ++k) env[k].second = dom.sample(rng);
      if (!consistent(env)) return false;
    }
    return true;
  }

  const Carrier<D> carrier = build_carrier(dom, mode);
  double cost = 1.0;
  for (std::size_t i = 0; i < vars.size(); ++i) cost *= static_cast<double>(carrier.count);
  if (cost > static_cast<double>(options.budget)) throw BudgetExceeded(cost, options.budget);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= carrier.count;
  std::vector<std::uint64_t> idx(vars.size());
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    decode_indices(flat, carrier.count, vars.size(), idx.data());
    for (std::size_t k = 0; k < vars.size(); ++k) env[k].second = carrier.get(idx[k]);
    if (!consistent(env)) return false;
  }
  return true;
}

template <class F>
auto with_domain(const MetricStructure& structure, F&& f) {
  return std::visit([&](const auto& desc) { return f(make_domain(desc)); }, structure.desc());
}

}  // namespace

Value evaluate(const MetricStructure& structure, const Formula& formula,
               const Assignment& assignment, const EvalOptions& options) {
  return with_domain(structure, [&](const auto& dom) {
    return evaluate_impl(dom, structure.mode(), formula, assignment, options);
  });
}

Value sigma2_value(const MetricStructure& structure, const Formula& formula,
                   const EvalOptions& options) {
  const auto s2 = sigma2_form(formula);
  if (!s2)
    throw std::invalid_argument(
        "sigma2_value: formula is not an inf-prefix/sup-prefix/quantifier-free sentence");
  if (!free_variables(formula).empty())
    throw std::invalid_argument("sigma2_value: formula has free variables");
  return with_domain(structure, [&](const auto& dom) {
    return sigma2_impl(dom, structure.mode(), *s2, options);
  });
}

std::vector<ScanPoint> convergence_scan(const Formula& formula, Family family,
                                        const std::vector<std::uint32_t>& ns,
                                        std::uint64_t samples, std::uint64_t seed,
                                        const EvalOptions& options) {
  if (!sigma2_form(formula))
    throw std::invalid_argument("convergence_scan: formula is not in Sigma_2 form");
  if (family == Family::Unitary && samples == 0)
    throw std::invalid_argument(
        "convergence_scan: the unitary family is evaluated in sampled mode; pass a sample count");
  std::vector<ScanPoint> out;
  out.reserve(ns.size());
  for (std::uint32_t n : ns) {
    const EvalMode mode = samples ? EvalMode::sampled(samples, seed) : EvalMode::exhaustive();
    MetricStructure structure = family == Family::Sym       ? MetricStructure::sym(n, mode)
                                : family == Family::Unitary ? MetricStructure::unitary(n, samples, seed)
                                                            : MetricStructure::rank(n, mode);
    std::string mode_text = samples ? "sampled(" + std::to_string(samples) + ";seed=" +
                                          std::to_string(seed) + ")"
                                    : "exhaustive";
    out.push_back(ScanPoint{n, sigma2_value(structure, formula, options), std::move(mode_text)});
  }
  return out;
}

Value embedding_defect(const std::function<Element(const Element&)>& map,
                       const MetricStructure& domain, const MetricStructure& codomain,
                       const DefectSampling& sampling, const EvalOptions& options) {
  return with_domain(domain, [&](const auto& dm) {
    return with_domain(codomain, [&](const auto& dn) {
      return defect_impl(dm, domain.mode(), dn, map, sampling, options);
    });
  });
}

bool discrete_shadow_check(const MetricStructure& structure,
                           const std::function<Rational(const Rational&)>& q, const Term& s,
                           const Term& t, const EvalOptions& options) {
  // contract validation on the rational grid k/32
  if (q(Rational(0)) != 0)
    throw std::invalid_argument("discrete_shadow_check: q(0) must be 0");
  for (int k = 1; k <= 32; ++k) {
    const Rational x(k, 32);
    const Rational qx = q(x);
    if (qx <= 0)
      throw std::invalid_argument("discrete_shadow_check: q(" + rat_to_string(x) +
                                  ") = " + rat_to_string(qx) + " violates q(x) > 0 for x > 0");
    if (qx > 1)
      throw std::invalid_argument("discrete_shadow_check: q must map [0,1] into [0,1]");
  }
  return with_domain(structure, [&](const auto& dom) {
    return shadow_impl(dom, structure.mode(), q, s, t, options);
  });
}

std::vector<std::pair<std::string, Formula>> builtin_sigma2_sentences() {
  const std::pair<const char*, const char*> defs[] = {
      {"commutator_gap", "inf x. sup y. min(2*d(comm(x, y), e), 1)"},
      {"max_displacement", "sup x. d(x, e)"},
      {"abelian_defect", "inf x. sup y. d(x*y, y*x)"},
      {"min_displacement", "inf x. d(x, e)"},
      {"pair_displacement", "sup x. sup y. d(x*y, e)"},
      {"conjugation_spread", "inf x. sup y. d(x*y*inv(x), y)"},
      {"involution_gap", "sup x. min(2*d(x*x, e), 1)"},
      {"balanced_displacement", "inf x. max(d(x, e), 1- d(x, e))"},
      {"excess_over_displacement", "sup x. sup y. d(x, y) -. d(x, e)"},
      {"proximity_floor", "inf x. sup y. 1- d(x, y)"},
  };
  std::vector<std::pair<std::string, Formula>> out;
  for (const auto& [name, text] : defs) out.emplace_back(name, parse_formula(text));
  return out;
}

}  // namespace mgw
