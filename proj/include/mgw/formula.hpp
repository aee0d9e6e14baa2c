// AST, parser and pretty-printer for formulas of the logic for metric
// structures over the group language {*, inv, e} plus the metric d.
//
// Grammar (whitespace insignificant, parentheses allowed for grouping):
//   formula := "inf" var "." formula | "sup" var "." formula | expr
//   expr    := expr "-." prefix | prefix
//   prefix  := "1-" prefix | rational "*" prefix | atom
//   atom    := "min(" formula "," formula ")" | "max(" formula "," formula ")"
//            | "d(" term "," term ")" | rational | "(" formula ")"
//   term    := factor | term "*" factor
//   factor  := var | "e" | "inv(" term ")" | "comm(" term "," term ")"
//            | "(" term ")"
//
// comm(a,b) desugars to a*b*inv(a)*inv(b). Rationals are "p/q" or decimals.
// "q * f" means the truncated scaling min{q*f, 1}, so a literal min(f, 1)
// wrapper is dropped at parse time. All formula values live in [0, 1].
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgw/rational.hpp"

namespace mgw {

class Term {
 public:
  enum class Kind { Variable, Identity, Inverse, Product };

  static Term variable(std::string name);
  static Term identity();
  static Term inverse_of(Term t);
  static Term product(Term lhs, Term rhs);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }     // Variable
  const Term& child() const { return node_->children[0]; }    // Inverse
  const Term& lhs() const { return node_->children[0]; }      // Product
  const Term& rhs() const { return node_->children[1]; }      // Product

  bool operator==(const Term& other) const;

 private:
  Term() = default;
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> children;
  };
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { Dist, Const, OneMinus, TruncSub, Min, Max, Scale, Inf, Sup };

  static Formula dist(Term s, Term t);
  static Formula constant(Rational value);  // must lie in [0, 1]
  static Formula one_minus(Formula f);
  static Formula trunc_sub(Formula lhs, Formula rhs);  // x -. y = max(x - y, 0)
  static Formula min_of(Formula lhs, Formula rhs);
  static Formula max_of(Formula lhs, Formula rhs);
  static Formula scale(Rational factor, Formula f);  // min{factor * f, 1}, factor >= 0
  static Formula inf(std::string var, Formula body);
  static Formula sup(std::string var, Formula body);

  Kind kind() const { return node_->kind; }
  const Term& term_lhs() const { return node_->terms[0]; }
  const Term& term_rhs() const { return node_->terms[1]; }
  const Rational& value() const { return node_->value; }    // Const, Scale factor
  const Formula& child() const { return node_->children[0]; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  const std::string& var() const { return node_->name; }    // Inf, Sup

  bool operator==(const Formula& other) const;

 private:
  Formula() = default;
  struct Node {
    Kind kind;
    Rational value;
    std::string name;
    std::vector<Term> terms;
    std::vector<Formula> children;
  };
  std::shared_ptr<const Node> node_;
};

struct FormulaParseError : std::runtime_error {
  FormulaParseError(const std::string& message, std::size_t position);
  std::size_t position;
};

Formula parse_formula(const std::string& text);
std::string to_string(const Formula& f);
std::string to_string(const Term& t);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> free_variables(const Term& t);
bool is_quantifier_free(const Formula& f);

// inf-prefix then sup-prefix then a quantifier-free body; either prefix may
// be empty. Returns nothing when the formula is not of that shape.
struct Sigma2Form {
  std::vector<std::string> inf_vars;
  std::vector<std::string> sup_vars;
  Formula body;
};
std::optional<Sigma2Form> sigma2_form(const Formula& f);

// Lipschitz constant of a quantifier-free formula in one variable, w.r.t. a
// bi-invariant metric: occurrences through d are 1-Lipschitz per occurrence,
// trunc_sub adds, min/max take the larger side, scaling multiplies.
Rational lipschitz_modulus(const Formula& f, const std::string& var);

std::uint32_t occurrence_count(const Term& t, const std::string& var);

}  // namespace mgw
