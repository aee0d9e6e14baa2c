// Batch experiments behind the CLI subcommands. Each returns a complete CSV
// document (header row first) plus a pass/fail verdict; rows are generated
// into indexed slots so sample loops can run in parallel and the output is
// still byte-identical for a fixed seed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgw/evaluate.hpp"
#include "mgw/rational.hpp"
#include "mgw/structure.hpp"

namespace mgw {

struct ExperimentResult {
  std::string csv;
  bool ok = true;  // false => some verification or guaranteed bound failed
};

// Pairwise chain-formula values for the built-in chain of length l in the
// given family, verified as a (psi, epsilon)-chain.
ExperimentResult chains_experiment(Family family, std::uint32_t n, std::uint32_t l,
                                   const Rational& epsilon);

// The same run exported as a chain-witness JSON document.
std::string chains_witness_json(Family family, std::uint32_t n, std::uint32_t l,
                                const Rational& epsilon);

// Rounds `samples` seeded random permutations of degree k*m and reports
// achieved distances against the 9/m^(1/3) bound (beta-adjusted).
ExperimentResult round_experiment(std::uint32_t m, std::uint32_t k, const Rational& beta,
                                  std::uint64_t samples, std::uint64_t seed);

// Rounds `samples` seeded Haar unitaries of dimension k*m + r through the
// corner repair and reports distances against 4/k^(1/4).
ExperimentResult uround_experiment(std::uint32_t k, std::uint32_t m, std::uint32_t r,
                                   std::uint64_t samples, std::uint64_t seed);

// Sigma_2 value of the formula across the family for each n; samples == 0
// means exhaustive evaluation.
ExperimentResult converge_experiment(Family family, const std::string& formula_text,
                                     const std::vector<std::uint32_t>& ns, std::uint64_t samples,
                                     std::uint64_t seed, const EvalOptions& options = {});

// Embedding defect of pad_embed (map == "pad") or diagonal_embed ("diag")
// from S_m into S_n, exhaustive over pairs when samples == 0.
ExperimentResult defect_experiment(const std::string& map_kind, std::uint32_t m, std::uint32_t k,
                                   std::uint32_t n, std::uint64_t samples, std::uint64_t seed,
                                   const EvalOptions& options = {});

// "a..b", "a,b,c" or a single integer.
std::vector<std::uint32_t> parse_n_range(const std::string& text);

}  // namespace mgw
