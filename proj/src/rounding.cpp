#include "mgw/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mgw {

bool PowerBound::satisfied_by(const Rational& value) const {
  using boost::multiprecision::pow;
  if (value < 0) return true;
  // value^den * base^max(-num,0) <= scale^den * base^max(num,0)
  Rational lhs = rat_pow(value, den);
  Rational rhs = rat_pow(scale, den);
  if (num >= 0)
    rhs *= Rational(pow(BigInt(base), static_cast<unsigned>(num)));
  else
    lhs *= Rational(pow(BigInt(base), static_cast<unsigned>(-num)));
  return lhs <= rhs;
}

double PowerBound::approx() const {
  return to_double(scale) *
         std::pow(static_cast<double>(base), static_cast<double>(num) / static_cast<double>(den));
}

std::string PowerBound::text() const {
  if (num == 0) return rat_to_string(scale);
  std::string exp = std::to_string(num);
  if (den != 1) exp += "/" + std::to_string(den);
  return rat_to_string(scale) + "*" + std::to_string(base) + "^(" + exp + ")";
}

namespace {

// beta = p/q in lowest terms with 0 < beta < 1
std::pair<unsigned, unsigned> beta_parts(const Rational& beta) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (beta <= 0 || beta >= 1) throw std::invalid_argument("beta must lie in (0,1)");
  return {static_cast<unsigned>(numerator(beta)), static_cast<unsigned>(denominator(beta))};
}

}  // namespace

Permutation chop_cycles(const Permutation& sigma, std::uint32_t m) {
  if (m == 0 || sigma.degree() % m != 0)
    throw std::invalid_argument("chop_cycles: m must divide the degree");
  std::vector<std::uint32_t> im(sigma.images());
  for (const auto& cycle : cycles_of(sigma)) {
    const std::size_t len = cycle.size();
    if (len <= m) continue;
    // consecutive blocks of length m, remainder last; only the block ends
    // get redirected
    for (std::size_t start = 0; start < len; start += m) {
      const std::size_t end = std::min(start + m, len);
      im[cycle[end - 1]] = cycle[start];
    }
  }
  return Permutation(std::move(im));
}

Permutation chop_cycles_padded(const Permutation& sigma, std::uint32_t m, std::uint32_t k,
                               const Rational& beta) {
  if (static_cast<std::uint64_t>(m) * k != sigma.degree())
    throw std::invalid_argument("chop_cycles_padded: degree must equal k*m");
  const auto [p, q] = beta_parts(beta);
  const std::uint64_t block = ceil_root(m, p, q);
  const std::uint64_t km = sigma.degree();
  const std::uint64_t big_n = ((km + block - 1) / block) * block;
  const Permutation padded = pad_embed(sigma, static_cast<std::uint32_t>(big_n));
  const Permutation chopped = chop_cycles(padded, static_cast<std::uint32_t>(block));
  // Surgery keeps every point inside its original cycle's support, so the
  // first km points still map among themselves.
  std::vector<std::uint32_t> im(chopped.images().begin(), chopped.images().begin() + km);
  return Permutation(std::move(im));
}

Permutation align_counts(const Permutation& tau, std::uint32_t k, const Rational& beta) {
  if (k == 0 || tau.degree() % k != 0)
    throw std::invalid_argument("align_counts: k must divide the degree");
  const std::uint32_t m = tau.degree() / k;
  const auto [p, q] = beta_parts(beta);
  const std::uint64_t width_cap = ceil_root(m, p, q);
  // group cycles by length; cycles_of is ordered by smallest element
  std::map<std::size_t, std::vector<const std::vector<std::uint32_t>*>> by_length;
  const auto cycles = cycles_of(tau);
  for (const auto& c : cycles) by_length[c.size()].push_back(&c);
  if (!by_length.empty() && by_length.rbegin()->first > width_cap)
    throw std::invalid_argument("align_counts: width " +
                                std::to_string(by_length.rbegin()->first) + " exceeds ceil(m^beta) = " +
                                std::to_string(width_cap));
  std::vector<std::uint32_t> im(tau.images());
  for (const auto& [len, group] : by_length) {
    if (len < 2) continue;
    const std::size_t drop = group.size() % k;
    for (std::size_t i = 0; i < drop; ++i)
      for (std::uint32_t point : *group[i]) im[point] = point;
  }
  return Permutation(std::move(im));
}

Permutation RoundingResult::witness_embedding_image() const {
  const Permutation standard = diagonal_embed(small, k, static_cast<std::uint32_t>(m) * k);
  return compose(compose(conjugator, standard), inverse(conjugator));
}

RoundingResult round_to_subgroup(const Permutation& sigma, std::uint32_t m, std::uint32_t k,
                                 const Rational& beta) {
  if (static_cast<std::uint64_t>(m) * k != sigma.degree())
    throw std::invalid_argument("round_to_subgroup: degree must equal k*m");
  const auto [p, q] = beta_parts(beta);
  const Permutation tau = chop_cycles_padded(sigma, m, k, beta);
  const Permutation rho = align_counts(tau, k, beta);

  // Every cycle count of rho (including fixed points) is a multiple of k.
  // Build the S_m core by taking one representative per k identical cycles,
  // and the conjugator mapping the standard page layout onto rho's cycles.
  std::vector<std::uint32_t> core(m);
  std::iota(core.begin(), core.end(), 0u);
  std::vector<std::uint32_t> pi(sigma.degree());
  std::map<std::size_t, std::vector<std::vector<std::uint32_t>>> by_length;
  for (auto& c : cycles_of(rho)) by_length[c.size()].push_back(std::move(c));
  std::uint32_t next_point = 0;  // allocator over {0..m-1}
  for (const auto& [len, group] : by_length) {
    if (group.size() % k != 0)
      throw std::logic_error("round_to_subgroup: cycle counts not aligned to k");
    for (std::size_t g = 0; g + k <= group.size(); g += k) {
      // core cycle on fresh points
      for (std::size_t t = 0; t < len; ++t)
        core[next_point + t] = next_point + static_cast<std::uint32_t>((t + 1) % len);
      for (std::uint32_t page = 0; page < k; ++page) {
        const auto& actual = group[g + page];
        for (std::size_t t = 0; t < len; ++t)
          pi[static_cast<std::size_t>(page) * m + next_point + t] = actual[t];
      }
      next_point += static_cast<std::uint32_t>(len);
    }
  }
  if (next_point != m) throw std::logic_error("round_to_subgroup: core allocation mismatch");

  RoundingResult result{
      .rounded = rho,
      .small = Permutation(std::move(core)),
      .conjugator = Permutation(std::move(pi)),
      .m = m,
      .k = k,
      .achieved_distance = hamming_distance(sigma, rho),
      .bound = PowerBound{Rational(9), m, -static_cast<long>(p), q},
      .guaranteed = m >= m0_for_beta(p, q),
  };
  return result;
}

UnitaryElement iota_embed(const UnitaryElement& a, std::uint32_t r) {
  const std::uint32_t n = a.dim() + r;
  CMatrix out = CMatrix::Identity(n, n);
  out.topLeftCorner(a.dim(), a.dim()) = a.matrix();
  return UnitaryElement(std::move(out));
}

UnitaryRoundingResult block_average_unitary(const UnitaryElement& a, std::uint32_t k) {
  const std::uint32_t dim = a.dim();
  if (k == 0 || dim % k != 0)
    throw std::invalid_argument("block_average_unitary: k must divide the dimension");
  const std::uint32_t m = dim / k;

  Eigen::ComplexSchur<CMatrix> schur(a.matrix(), true);
  if (schur.info() != Eigen::Success)
    throw std::domain_error("block_average_unitary: Schur decomposition failed");
  const CMatrix& t = schur.matrixT();
  // a unitary input is normal, so T must be essentially diagonal
  CMatrix off = t;
  off.diagonal().setZero();
  if (off.norm() > 1e-6)
    throw std::domain_error("block_average_unitary: input is not normal within tolerance");

  // sort eigen-angles in [0, 2*pi) ascending, eigenvectors alongside
  const double two_pi = 2.0 * M_PI;
  std::vector<std::uint32_t> order(dim);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<double> angle(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    double th = std::arg(t(i, i));
    if (th < 0) th += two_pi;
    angle[i] = th;
  }
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return angle[x] != angle[y] ? angle[x] < angle[y] : x < y;
  });

  CMatrix w(dim, dim);
  for (std::uint32_t j = 0; j < dim; ++j) w.col(j) = schur.matrixU().col(order[j]);

  CMatrix core = CMatrix::Zero(m, m);
  Eigen::VectorXcd rounded(dim);
  for (std::uint32_t b = 0; b < m; ++b) {
    Complex sum(0, 0);
    double angle_sum = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
      const std::uint32_t idx = order[b * k + j];
      sum += t(idx, idx);
      angle_sum += angle[idx];
    }
    double mu;
    if (std::abs(sum) < 1e-12)
      mu = angle_sum / k;  // near-cancelling block: fall back to the mean angle
    else
      mu = std::arg(sum);
    const Complex value = std::polar(1.0, mu);
    core(b, b) = value;
    for (std::uint32_t j = 0; j < k; ++j) rounded(b * k + j) = value;
  }

  UnitaryElement approximant(w * rounded.asDiagonal() * w.adjoint());
  const double achieved = hs_distance(a, approximant);
  return UnitaryRoundingResult{
      .approximant = std::move(approximant),
      .core = UnitaryElement(std::move(core)),
      .achieved_distance = achieved,
      .bound = M_PI / std::sqrt(static_cast<double>(m)),
      .repair_unique = true,
  };
}

UnitaryRoundingResult unitary_round(const UnitaryElement& c, std::uint32_t k, std::uint32_t m,
                                    std::uint32_t r) {
  if (r >= m) throw std::invalid_argument("unitary_round: need 0 <= r < m");
  const std::uint64_t km = static_cast<std::uint64_t>(k) * m;
  if (c.dim() != km + r)
    throw std::invalid_argument("unitary_round: dimension must equal k*m + r");
  const CMatrix corner = c.matrix().topLeftCorner(km, km);
  PolarFactor repair = polar_factor(corner);
  UnitaryElement core(std::move(repair.unitary));
  UnitaryElement approximant = iota_embed(core, r);
  const double achieved = hs_distance(c, approximant);
  return UnitaryRoundingResult{
      .approximant = std::move(approximant),
      .core = std::move(core),
      .achieved_distance = achieved,
      .bound = 4.0 / std::pow(static_cast<double>(k), 0.25),
      .repair_unique = repair.unique,
  };
}

}  // namespace mgw
