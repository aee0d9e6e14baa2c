#include "mgw/formula.hpp"

#include <algorithm>
#include <cctype>

namespace mgw {

// ---------------------------------------------------------------- Term

Term Term::variable(std::string name) {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}});
  return t;
}

Term Term::identity() {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{Kind::Identity, {}, {}});
  return t;
}

Term Term::inverse_of(Term inner) {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{Kind::Inverse, {}, {std::move(inner)}});
  return t;
}

Term Term::product(Term lhs, Term rhs) {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{Kind::Product, {}, {std::move(lhs), std::move(rhs)}});
  return t;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Variable: return node_->name == other.node_->name;
    case Kind::Identity: return true;
    case Kind::Inverse: return child() == other.child();
    case Kind::Product: return lhs() == other.lhs() && rhs() == other.rhs();
  }
  return false;
}

// ---------------------------------------------------------------- Formula

Formula Formula::dist(Term s, Term t) {
  Formula f;
  f.node_ = std::make_shared<const Node>(Node{Kind::Dist, 0, {}, {std::move(s), std::move(t)}, {}});
  return f;
}

Formula Formula::constant(Rational value) {
  if (value < 0 || value > 1)
    throw std::invalid_argument("Formula::constant: value must lie in [0,1], got " +
                                rat_to_string(value));
  Formula f;
  f.node_ = std::make_shared<const Node>(Node{Kind::Const, std::move(value), {}, {}, {}});
  return f;
}

Formula Formula::one_minus(Formula inner) {
  Formula f;
  f.node_ = std::make_shared<const Node>(Node{Kind::OneMinus, 0, {}, {}, {std::move(inner)}});
  return f;
}

Formula Formula::trunc_sub(Formula lhs, Formula rhs) {
  Formula f;
  f.node_ = std::make_shared<const Node>(
      Node{Kind::TruncSub, 0, {}, {}, {std::move(lhs), std::move(rhs)}});
  return f;
}

Formula Formula::min_of(Formula lhs, Formula rhs) {
  Formula f;
  f.node_ =
      std::make_shared<const Node>(Node{Kind::Min, 0, {}, {}, {std::move(lhs), std::move(rhs)}});
  return f;
}

Formula Formula::max_of(Formula lhs, Formula rhs) {
  Formula f;
  f.node_ =
      std::make_shared<const Node>(Node{Kind::Max, 0, {}, {}, {std::move(lhs), std::move(rhs)}});
  return f;
}

Formula Formula::scale(Rational factor, Formula inner) {
  if (factor < 0) throw std::invalid_argument("Formula::scale: factor must be >= 0");
  Formula f;
  f.node_ = std::make_shared<const Node>(
      Node{Kind::Scale, std::move(factor), {}, {}, {std::move(inner)}});
  return f;
}

Formula Formula::inf(std::string var, Formula body) {
  Formula f;
  f.node_ =
      std::make_shared<const Node>(Node{Kind::Inf, 0, std::move(var), {}, {std::move(body)}});
  return f;
}

Formula Formula::sup(std::string var, Formula body) {
  Formula f;
  f.node_ =
      std::make_shared<const Node>(Node{Kind::Sup, 0, std::move(var), {}, {std::move(body)}});
  return f;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Dist: return term_lhs() == other.term_lhs() && term_rhs() == other.term_rhs();
    case Kind::Const: return value() == other.value();
    case Kind::OneMinus: return child() == other.child();
    case Kind::TruncSub:
    case Kind::Min:
    case Kind::Max: return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Scale: return value() == other.value() && child() == other.child();
    case Kind::Inf:
    case Kind::Sup: return var() == other.var() && child() == other.child();
  }
  return false;
}

// ----------------------------------------------------------------- parser

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool try_consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!try_consume(c))
      throw FormulaParseError(std::string("expected '") + c + "' " + what, pos);
  }
  // "-." lexes as one token; a bare '-' only appears inside "1-".
  bool try_truncsub() {
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '.') {
      pos += 2;
      return true;
    }
    return false;
  }
  std::string try_identifier() {
    skip_ws();
    if (pos >= text.size()) return {};
    const char c = text[pos];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return {};
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }
  std::optional<Rational> try_rational() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      return std::nullopt;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && (text[pos] == '/' || text[pos] == '.')) {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    return parse_rational(text.substr(start, pos - start));
  }
};

const std::set<std::string> kKeywords = {"inf", "sup", "min", "max", "d", "e", "inv", "comm"};

class Parser {
 public:
  explicit Parser(const std::string& text) : cur_{text} {}

  Formula parse() {
    Formula f = formula();
    if (!cur_.eof()) throw FormulaParseError("trailing input after formula", cur_.pos);
    return f;
  }

 private:
  Cursor cur_;

  std::string variable_name() {
    const std::size_t at = cur_.pos;
    std::string id = cur_.try_identifier();
    if (id.empty()) throw FormulaParseError("expected a variable name", at);
    if (kKeywords.count(id))
      throw FormulaParseError("'" + id + "' is a keyword, not a variable", at);
    return id;
  }

  Formula formula() {
    const std::size_t at = cur_.pos;
    std::string id = cur_.try_identifier();
    if (id == "inf" || id == "sup") {
      std::string v = variable_name();
      cur_.expect('.', "after quantified variable");
      Formula body = formula();
      return id == "inf" ? Formula::inf(std::move(v), std::move(body))
                         : Formula::sup(std::move(v), std::move(body));
    }
    cur_.pos = at;
    return expr();
  }

  Formula expr() {
    Formula acc = prefix();
    while (cur_.try_truncsub()) acc = Formula::trunc_sub(std::move(acc), prefix());
    return acc;
  }

  Formula prefix() {
    const std::size_t at = cur_.pos;
    if (auto q = cur_.try_rational()) {
      if (cur_.try_consume('*')) return Formula::scale(*q, prefix());
      cur_.skip_ws();
      if (cur_.pos < cur_.text.size() && cur_.text[cur_.pos] == '-' &&
          !(cur_.pos + 1 < cur_.text.size() && cur_.text[cur_.pos + 1] == '.')) {
        if (*q != 1) throw FormulaParseError("only '1-' is a valid prefix", at);
        ++cur_.pos;
        return Formula::one_minus(prefix());
      }
      if (*q > 1) throw FormulaParseError("constant outside [0,1]", at);
      return Formula::constant(*q);
    }
    return atom();
  }

  Formula atom() {
    const std::size_t at = cur_.pos;
    if (cur_.try_consume('(')) {
      Formula f = formula();
      cur_.expect(')', "to close group");
      return f;
    }
    std::string id = cur_.try_identifier();
    if (id == "min" || id == "max") {
      cur_.expect('(', "after min/max");
      Formula a = formula();
      cur_.expect(',', "between min/max arguments");
      Formula b = formula();
      cur_.expect(')', "to close min/max");
      if (id == "min") {
        // min{f, 1} is already f: truncated scaling keeps values in [0,1].
        if (b.kind() == Formula::Kind::Const && b.value() == 1) return a;
        if (a.kind() == Formula::Kind::Const && a.value() == 1) return b;
        return Formula::min_of(std::move(a), std::move(b));
      }
      return Formula::max_of(std::move(a), std::move(b));
    }
    if (id == "d") {
      cur_.expect('(', "after d");
      Term s = term();
      cur_.expect(',', "between d arguments");
      Term t = term();
      cur_.expect(')', "to close d");
      return Formula::dist(std::move(s), std::move(t));
    }
    if (id == "inf" || id == "sup") {
      cur_.pos = at;
      return formula();
    }
    throw FormulaParseError("expected a formula", at);
  }

  Term term() {
    Term acc = factor();
    while (true) {
      const std::size_t at = cur_.pos;
      if (!cur_.try_consume('*')) break;
      // reject "* followed by nothing" cleanly
      if (cur_.eof()) throw FormulaParseError("expected a term after '*'", at);
      acc = Term::product(std::move(acc), factor());
    }
    return acc;
  }

  Term factor() {
    const std::size_t at = cur_.pos;
    if (cur_.try_consume('(')) {
      Term t = term();
      cur_.expect(')', "to close term group");
      return t;
    }
    std::string id = cur_.try_identifier();
    if (id.empty()) throw FormulaParseError("expected a term", at);
    if (id == "e") return Term::identity();
    if (id == "inv") {
      cur_.expect('(', "after inv");
      Term t = term();
      cur_.expect(')', "to close inv");
      return Term::inverse_of(std::move(t));
    }
    if (id == "comm") {
      cur_.expect('(', "after comm");
      Term a = term();
      cur_.expect(',', "between comm arguments");
      Term b = term();
      cur_.expect(')', "to close comm");
      // comm(a,b) = a*b*inv(a)*inv(b)
      return Term::product(Term::product(Term::product(a, b), Term::inverse_of(a)),
                           Term::inverse_of(b));
    }
    if (kKeywords.count(id)) throw FormulaParseError("'" + id + "' cannot start a term", at);
    return Term::variable(std::move(id));
  }
};

}  // namespace

FormulaParseError::FormulaParseError(const std::string& message, std::size_t pos)
    : std::runtime_error(message + " (at offset " + std::to_string(pos) + ")"), position(pos) {}

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

// ----------------------------------------------------------- pretty print

namespace {

// formula precedence: 0 quantifier, 1 trunc_sub chain, 2 prefix, 3 atom
int formula_level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: return 0;
    case Formula::Kind::TruncSub: return 1;
    case Formula::Kind::OneMinus:
    case Formula::Kind::Scale: return 2;
    default: return 3;
  }
}

void print_formula(std::string& out, const Formula& f, int min_level);

void print_term(std::string& out, const Term& t, bool parenthesize_products) {
  switch (t.kind()) {
    case Term::Kind::Variable: out += t.name(); return;
    case Term::Kind::Identity: out += 'e'; return;
    case Term::Kind::Inverse:
      out += "inv(";
      print_term(out, t.child(), false);
      out += ')';
      return;
    case Term::Kind::Product: {
      if (parenthesize_products) out += '(';
      print_term(out, t.lhs(), false);
      out += '*';
      print_term(out, t.rhs(), t.rhs().kind() == Term::Kind::Product);
      if (parenthesize_products) out += ')';
      return;
    }
  }
}

void print_formula(std::string& out, const Formula& f, int min_level) {
  const bool needs_parens = formula_level(f) < min_level;
  if (needs_parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Dist:
      out += "d(";
      print_term(out, f.term_lhs(), false);
      out += ", ";
      print_term(out, f.term_rhs(), false);
      out += ')';
      break;
    case Formula::Kind::Const: out += rat_to_string(f.value()); break;
    case Formula::Kind::OneMinus:
      out += "1- ";
      print_formula(out, f.child(), 2);
      break;
    case Formula::Kind::TruncSub:
      print_formula(out, f.lhs(), 1);
      out += " -. ";
      print_formula(out, f.rhs(), 2);
      break;
    case Formula::Kind::Min:
    case Formula::Kind::Max:
      out += f.kind() == Formula::Kind::Min ? "min(" : "max(";
      print_formula(out, f.lhs(), 0);
      out += ", ";
      print_formula(out, f.rhs(), 0);
      out += ')';
      break;
    case Formula::Kind::Scale:
      out += rat_to_string(f.value());
      out += '*';
      print_formula(out, f.child(), 2);
      break;
    case Formula::Kind::Inf:
    case Formula::Kind::Sup:
      out += f.kind() == Formula::Kind::Inf ? "inf " : "sup ";
      out += f.var();
      out += ". ";
      print_formula(out, f.child(), 0);
      break;
  }
  if (needs_parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(out, f, 0);
  return out;
}

std::string to_string(const Term& t) {
  std::string out;
  print_term(out, t, false);
  return out;
}

// ------------------------------------------------------------- inspection

std::set<std::string> free_variables(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable: return {t.name()};
    case Term::Kind::Identity: return {};
    case Term::Kind::Inverse: return free_variables(t.child());
    case Term::Kind::Product: {
      auto s = free_variables(t.lhs());
      auto r = free_variables(t.rhs());
      s.insert(r.begin(), r.end());
      return s;
    }
  }
  return {};
}

std::set<std::string> free_variables(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Dist: {
      auto s = free_variables(f.term_lhs());
      auto r = free_variables(f.term_rhs());
      s.insert(r.begin(), r.end());
      return s;
    }
    case Formula::Kind::Const: return {};
    case Formula::Kind::OneMinus:
    case Formula::Kind::Scale: return free_variables(f.child());
    case Formula::Kind::TruncSub:
    case Formula::Kind::Min:
    case Formula::Kind::Max: {
      auto s = free_variables(f.lhs());
      auto r = free_variables(f.rhs());
      s.insert(r.begin(), r.end());
      return s;
    }
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: {
      auto s = free_variables(f.child());
      s.erase(f.var());
      return s;
    }
  }
  return {};
}

bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: return false;
    case Formula::Kind::Dist:
    case Formula::Kind::Const: return true;
    case Formula::Kind::OneMinus:
    case Formula::Kind::Scale: return is_quantifier_free(f.child());
    default: return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
  }
}

std::optional<Sigma2Form> sigma2_form(const Formula& f) {
  Sigma2Form out{.inf_vars = {}, .sup_vars = {}, .body = f};
  const Formula* cur = &f;
  while (cur->kind() == Formula::Kind::Inf) {
    out.inf_vars.push_back(cur->var());
    cur = &cur->child();
  }
  while (cur->kind() == Formula::Kind::Sup) {
    out.sup_vars.push_back(cur->var());
    cur = &cur->child();
  }
  if (!is_quantifier_free(*cur)) return std::nullopt;
  out.body = *cur;
  return out;
}

std::uint32_t occurrence_count(const Term& t, const std::string& var) {
  switch (t.kind()) {
    case Term::Kind::Variable: return t.name() == var ? 1 : 0;
    case Term::Kind::Identity: return 0;
    case Term::Kind::Inverse: return occurrence_count(t.child(), var);
    case Term::Kind::Product:
      return occurrence_count(t.lhs(), var) + occurrence_count(t.rhs(), var);
  }
  return 0;
}

Rational lipschitz_modulus(const Formula& f, const std::string& var) {
  switch (f.kind()) {
    case Formula::Kind::Dist:
      return Rational(occurrence_count(f.term_lhs(), var) + occurrence_count(f.term_rhs(), var));
    case Formula::Kind::Const: return 0;
    case Formula::Kind::OneMinus: return lipschitz_modulus(f.child(), var);
    case Formula::Kind::Scale: return f.value() * lipschitz_modulus(f.child(), var);
    case Formula::Kind::TruncSub:
      return lipschitz_modulus(f.lhs(), var) + lipschitz_modulus(f.rhs(), var);
    case Formula::Kind::Min:
    case Formula::Kind::Max:
      return std::max(lipschitz_modulus(f.lhs(), var), lipschitz_modulus(f.rhs(), var));
    case Formula::Kind::Inf:
    case Formula::Kind::Sup:
      if (f.var() == var) return 0;
      return lipschitz_modulus(f.child(), var);
  }
  return 0;
}

}  // namespace mgw
