// Finite (or samplable) structures interpreting the bi-invariant metric group
// language: S_n with the Hamming metric, U_n with the Hilbert-Schmidt metric,
// the matrix algebra M_n with the rank metric, and explicit finite tables.
//
// S_n and the table structures are enumerable. For the rank structures the
// enumerable carrier is the group of permutation matrices inside M_n (the
// subgroup all chain constructions land in); arbitrary rational matrices are
// still accepted as elements of provided tuples. U_n is a continuum and is
// only ever evaluated in sampled mode.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mgw/matrix.hpp"
#include "mgw/permutation.hpp"
#include "mgw/rational.hpp"

namespace mgw {

enum class Family { Sym, Unitary, Rank };

struct EvalMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static EvalMode exhaustive() { return {}; }
  static EvalMode sampled(std::uint64_t samples, std::uint64_t seed) {
    return {Kind::Sampled, samples, seed};
  }
};

// Explicit finite group with a bi-invariant [0,1]-valued metric. Group and
// metric axioms are validated on construction.
class TableStructure {
 public:
  TableStructure(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> op,
                 std::vector<std::vector<Rational>> metric);

  // {"elements": [names...], "op": [[i...]...], "metric": [["p/q"...]...]}
  static TableStructure from_json(const std::string& text);

  std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t compose(std::uint32_t a, std::uint32_t b) const { return op_[a][b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }
  const Rational& distance(std::uint32_t a, std::uint32_t b) const { return metric_[a][b]; }
  const std::string& name(std::uint32_t a) const { return names_[a]; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::uint32_t>> op_;
  std::vector<std::uint32_t> inv_;
  std::uint32_t identity_ = 0;
  std::vector<std::vector<Rational>> metric_;
};

using Element = std::variant<Permutation, UnitaryElement, RationalMatrix, std::uint32_t>;

class MetricStructure {
 public:
  static MetricStructure sym(std::uint32_t n, EvalMode mode = EvalMode::exhaustive());
  static MetricStructure unitary(std::uint32_t n, std::uint64_t samples, std::uint64_t seed);
  static MetricStructure rank(std::uint32_t n, EvalMode mode = EvalMode::exhaustive());
  static MetricStructure table(TableStructure table, EvalMode mode = EvalMode::exhaustive());

  struct SymDesc {
    std::uint32_t n;
  };
  struct UnitaryDesc {
    std::uint32_t n;
  };
  struct RankDesc {
    std::uint32_t n;
  };

  using Desc = std::variant<SymDesc, UnitaryDesc, RankDesc, TableStructure>;

  const Desc& desc() const { return desc_; }
  const EvalMode& mode() const { return mode_; }
  std::string descriptor() const;

  // Exact rational values for sym/rank/table, floating point for unitary.
  bool exact_valued() const { return !std::holds_alternative<UnitaryDesc>(desc_); }

 private:
  MetricStructure(Desc desc, EvalMode mode) : desc_(std::move(desc)), mode_(mode) {}
  Desc desc_;
  EvalMode mode_;
};

}  // namespace mgw
