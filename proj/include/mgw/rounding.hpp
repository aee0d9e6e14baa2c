// Approximation machinery: cycle surgery rounding a permutation of degree km
// onto the image of an isometric embedding of S_m, with certified distance
// bounds, and the analogous unitary constructions (block eigenvalue
// averaging and corner rounding through the nearest-unitary repair).
//
// Permutation-side bounds of the form c * m^(p/q) are irrational in general,
// so they are carried symbolically as PowerBound and every certification is
// an exact rational comparison; no floating point enters these checks.
#pragma once

#include <cstdint>

#include "mgw/matrix.hpp"
#include "mgw/permutation.hpp"
#include "mgw/rational.hpp"

namespace mgw {

// scale * base^(num/den), den > 0; num may be negative.
struct PowerBound {
  Rational scale = 1;
  std::uint64_t base = 1;
  long num = 0;
  unsigned den = 1;

  // exact: value <= scale * base^(num/den)
  bool satisfied_by(const Rational& value) const;
  double approx() const;
  std::string text() const;
};

// Breaks every cycle of length > m into consecutive blocks of length m plus
// one remainder block. Cycles are traversed from their smallest element in
// functional order, so the output is deterministic. Requires m | degree.
// Guarantees width <= m, fixed points preserved, distance <= 2/m.
Permutation chop_cycles(const Permutation& sigma, std::uint32_t m);

// The padded variant: embeds into degree N = ceil(km/B)*B with B = ceil(m^beta),
// chops with block B, and restricts back (surgery never moves a point out of
// its cycle's support, so the restriction is well defined). Guarantees width
// <= ceil(m^beta) and distance <= 8/m^beta. beta in (0,1); degree must be k*m.
Permutation chop_cycles_padded(const Permutation& sigma, std::uint32_t m, std::uint32_t k,
                               const Rational& beta);

// For each cycle length i >= 2 drops |C_i| mod k cycles (those with the
// smallest minimum element), making every cycle count a multiple of k.
// Requires width(tau) <= ceil(m^beta) where m = degree/k. The distance to the
// input is at most m^(2*beta-1) once m >= m0_for_beta(beta).
Permutation align_counts(const Permutation& tau, std::uint32_t k, const Rational& beta);

struct RoundingResult {
  Permutation rounded;     // the surgered permutation in S_{km}
  Permutation small;       // its core in S_m
  Permutation conjugator;  // pi with rounded = pi . diagonal_embed(small,k,km) . pi^-1
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  Rational achieved_distance;  // hamming_distance(input, rounded)
  PowerBound bound;            // 9 / m^(1/3) for the default beta
  bool guaranteed = false;     // m >= m0_for_beta(beta)

  bool bound_satisfied() const { return bound.satisfied_by(achieved_distance); }
  Permutation witness_embedding_image() const;  // pi . Phi0(small) . pi^-1
};

// chop_cycles_padded then align_counts, plus reconstruction of the witness:
// the cycle counts of the result are all multiples of k, so it is the image
// of some rho in S_m under an isometric embedding conjugate to the standard
// diagonal one; `small` and `conjugator` exhibit it.
RoundingResult round_to_subgroup(const Permutation& sigma, std::uint32_t m, std::uint32_t k,
                                 const Rational& beta = Rational(1, 3));

struct UnitaryRoundingResult {
  UnitaryElement approximant;  // same dimension as the input
  UnitaryElement core;         // the smaller-dimensional witness
  double achieved_distance = 0;  // hs_distance(input, approximant)
  double bound = 0;              // same metric scale as achieved_distance
  bool repair_unique = true;     // false when the corner block was singular

  // block averaging's bound is usually quoted in the normalized HS norm,
  // which is twice the metric
  double normalized_error() const { return 2.0 * achieved_distance; }
  double normalized_bound() const { return 2.0 * bound; }
};

// Rounds a unitary of dimension km to one with spectral multiplicity k:
// eigen-angles are sorted, partitioned into m consecutive blocks of k, and
// each block is replaced by its circular mean (the argument of the block
// sum, falling back to the arithmetic mean of angles when the sum nearly
// cancels). The approximant shares the input's eigenvectors, so it equals
// W (I_k (x) B) W* up to reordering; `core` is B. Normalized-HS error is at
// most 2*pi/sqrt(m), i.e. bound = pi/sqrt(m) in the metric.
UnitaryRoundingResult block_average_unitary(const UnitaryElement& a, std::uint32_t k);

// block-diag(A, I_r)
UnitaryElement iota_embed(const UnitaryElement& a, std::uint32_t r);

// Takes the top-left km x km corner of C in U_{km+r}, repairs it to the
// nearest unitary B, and returns iota(B) with bound 4 / k^(1/4). A singular
// corner (input far from every embedded element) is reported through
// repair_unique rather than by failing.
UnitaryRoundingResult unitary_round(const UnitaryElement& c, std::uint32_t k, std::uint32_t m,
                                    std::uint32_t r);

}  // namespace mgw
