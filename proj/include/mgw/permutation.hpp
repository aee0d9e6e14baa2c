// Exact arithmetic for finite symmetric groups with the normalized Hamming
// metric, including the coordinatewise product action on {1,2,3}^l and the
// page-wise diagonal embedding used by the chain constructions.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mgw/rational.hpp"
#include "mgw/rng.hpp"

namespace mgw {

// Bijection of {0..n-1}. The serialized text forms are 1-based to match the
// usual cycle notation; everything in memory is 0-based.
class Permutation {
 public:
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::uint32_t degree);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t apply(std::uint32_t point) const { return images_[point]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool operator==(const Permutation& other) const = default;

  // One-line form "n: s(1) s(2) ... s(n)".
  std::string to_one_line() const;
  static Permutation from_one_line(const std::string& text);

  // Disjoint-cycle form "(1 2 3)(4 5)"; fixed points are omitted and the
  // identity prints as "()". Degree defaults to the largest point mentioned.
  std::string to_cycle_string() const;
  static Permutation from_cycles(const std::string& text, std::uint32_t degree = 0);

 private:
  std::vector<std::uint32_t> images_;
};

struct CycleProfile {
  std::map<std::uint32_t, std::uint64_t> counts;  // cycle length -> how many
  std::uint32_t degree = 0;

  std::uint32_t width() const;  // longest cycle length; 1 for the identity
  std::uint64_t count(std::uint32_t length) const;
  std::uint64_t fixed_points() const { return count(1); }
  std::uint64_t total_cycles() const;
  bool operator==(const CycleProfile&) const = default;
};

// (a o b)(i) = a(b(i)): the right factor acts first.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
// a b a^-1 b^-1
Permutation commutator(const Permutation& a, const Permutation& b);

Rational hamming_distance(const Permutation& a, const Permutation& b);

CycleProfile cycle_profile(const Permutation& p);

// Cycles in canonical order: each starts at its smallest point and runs in
// functional order; cycles sorted by that smallest point. Includes 1-cycles.
std::vector<std::vector<std::uint32_t>> cycles_of(const Permutation& p);

// Coordinatewise action of S_3 x ... x S_3 on {1,2,3}^l, identified with
// S_{3^l} via the big-endian mixed-radix encoding of tuples.
Permutation product_action(const std::vector<Permutation>& factors);

// sigma acting on each of k pages {1..m} x {j}, pages laid out consecutively,
// extended by fixed points up to degree n. Isometric when n == k*m.
Permutation diagonal_embed(const Permutation& sigma, std::uint32_t k, std::uint32_t n);

// Extension by fixed points.
Permutation pad_embed(const Permutation& sigma, std::uint32_t n);

Permutation random_permutation(std::uint32_t degree, Rng& rng);

// Lexicographic unranking; index must be < degree!.
Permutation permutation_at(std::uint32_t degree, std::uint64_t index);
std::uint64_t factorial(std::uint32_t n);  // throws if it would overflow 64 bits

}  // namespace mgw
