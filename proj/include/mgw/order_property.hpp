// Explicit chain witnesses in S_n, U_n and the rank-metric matrix algebra,
// and verification of the chain relation
//   a < b  iff  psi(a, b) <= eps  and  psi(b, a) >= 1 - eps.
//
// The constructions: in S_{3^l} the i-th pair acts as ((12), (23)) in the
// i-th coordinate of {1,2,3}^l, so earlier sigmas commute with later taus
// while the other commutators are products of 3^(l-1) disjoint 3-cycles.
// Everything else is an image of that seed under the diagonal embedding, the
// permutation-matrix representation, or both.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mgw/evaluate.hpp"
#include "mgw/formula.hpp"
#include "mgw/matrix.hpp"
#include "mgw/permutation.hpp"
#include "mgw/structure.hpp"

namespace mgw {

// Pairs (sigma_{l,i}, tau_{l,i}) in S_{3^l}, i = 1..l.
std::vector<std::pair<Permutation, Permutation>> base_pairs(std::uint32_t l);

// Their images (Sigma_{n,i}, T_{n,i}) in S_n under the diagonal embedding
// with k = floor(n / 3^l). Requires n >= 3^l. For i >= j the commutator
// [Sigma_i, T_j] has Hamming distance exactly 3^l k / n from the identity.
std::vector<std::pair<Permutation, Permutation>> sym_chain(std::uint32_t n, std::uint32_t l);

// Permutation-matrix images in U_n; commutator distances scale through
// d_U = sqrt(d_H / 2).
std::vector<std::pair<UnitaryElement, UnitaryElement>> unitary_chain(std::uint32_t n,
                                                                     std::uint32_t l);

// The same pairs as exact 0/1 rational matrices in the rank-metric algebra.
std::vector<std::pair<RationalMatrix, RationalMatrix>> rank_chain(std::uint32_t n,
                                                                  std::uint32_t l);

// min{2 d([x1,y2], e), 1} - the order-property formula for groups.
Formula eta_formula();
// min{3 d(x1*y2, y2*x1), 1} - the rank-metric variant.
Formula rank_order_formula();

struct ChainReport {
  bool valid = true;
  // set when !valid: the first ordered pair (scanning i < j, i outer) that
  // violates the relation, with both psi values
  std::size_t violation_i = 0;
  std::size_t violation_j = 0;
  Value psi_ij;
  Value psi_ji;
  // psi(tuple_a, tuple_b) for every (a, b), diagonal included
  std::vector<std::vector<Value>> values;
};

// Verifies that the tuples, in list order, form a (psi, eps)-chain. psi's
// free variables must be among x1..xm, y1..ym where m is the tuple arity;
// psi(a, b) binds x_i to a_i and y_i to b_i. All ordered pairs are tested,
// not only consecutive ones (the relation need not be transitive). epsilon
// must lie in [0, 1/2). Comparisons are exact on exact-valued structures and
// use the 1e-9 tolerance on unitary ones.
ChainReport chain_check(const MetricStructure& structure, const Formula& psi,
                        const Rational& epsilon, const std::vector<std::vector<Element>>& tuples);

// {structure, epsilon, formula_text, tuples, values_matrix}
std::string chain_witness_json(const MetricStructure& structure, const Formula& psi,
                               const Rational& epsilon,
                               const std::vector<std::vector<Element>>& tuples,
                               const ChainReport& report);

std::string element_to_string(const Element& e);

}  // namespace mgw
