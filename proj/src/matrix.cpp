#include "mgw/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace mgw {

double frobenius(const CMatrix& a) { return a.norm(); }

double normalized_hs(const CMatrix& a) {
  return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

UnitaryElement::UnitaryElement(CMatrix mat, double tol) : mat_(std::move(mat)) {
  if (mat_.rows() == 0 || mat_.rows() != mat_.cols())
    throw std::invalid_argument("UnitaryElement: matrix must be square and non-empty");
  if (!all_finite(mat_)) throw std::invalid_argument("UnitaryElement: non-finite entries");
  const double defect = (mat_.adjoint() * mat_ - CMatrix::Identity(mat_.rows(), mat_.cols())).norm();
  if (defect > tol)
    throw std::invalid_argument("UnitaryElement: ||A*A - I||_F = " + std::to_string(defect) +
                                " exceeds tolerance");
}

UnitaryElement UnitaryElement::identity_of(std::uint32_t dim) {
  return UnitaryElement(CMatrix::Identity(dim, dim));
}

UnitaryElement UnitaryElement::adjoint() const { return UnitaryElement(mat_.adjoint()); }

UnitaryElement operator*(const UnitaryElement& a, const UnitaryElement& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("unitary product: dimension mismatch");
  return UnitaryElement(a.matrix() * b.matrix());
}

UnitaryElement commutator(const UnitaryElement& a, const UnitaryElement& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
  return UnitaryElement(a.matrix() * b.matrix() * a.matrix().adjoint() * b.matrix().adjoint());
}

double hs_distance(const UnitaryElement& a, const UnitaryElement& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("hs_distance: dimension mismatch");
  return (a.matrix() - b.matrix()).norm() / (2.0 * std::sqrt(static_cast<double>(a.dim())));
}

UnitaryElement perm_matrix(const Permutation& sigma) {
  CMatrix m = CMatrix::Zero(sigma.degree(), sigma.degree());
  for (std::uint32_t i = 0; i < sigma.degree(); ++i) m(sigma.apply(i), i) = Complex(1.0, 0.0);
  return UnitaryElement(std::move(m));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PolarFactor polar_factor(const CMatrix& a) {
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smallest = svd.singularValues()(svd.singularValues().size() - 1);
  return PolarFactor{svd.matrixU() * svd.matrixV().adjoint(), smallest > 1e-12};
}

UnitaryElement nearest_unitary(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("nearest_unitary: matrix must be square and non-empty");
  PolarFactor pf = polar_factor(a);
  if (!pf.unique)
    throw std::domain_error("nearest_unitary: input is singular up to tolerance 1e-12");
  return UnitaryElement(std::move(pf.unitary));
}

UnitaryElement haar_unitary(std::uint32_t dim, Rng& rng) {
  CMatrix g(dim, dim);
  const double scale = 1.0 / std::sqrt(2.0);
  for (std::uint32_t j = 0; j < dim; ++j)
    for (std::uint32_t i = 0; i < dim; ++i)
      g(i, j) = Complex(rng.gaussian() * scale, rng.gaussian() * scale);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is exactly Haar.
  for (std::uint32_t j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double ad = std::abs(d);
    q.col(j) *= (ad > 0) ? d / ad : Complex(1.0, 0.0);
  }
  return UnitaryElement(std::move(q));
}

std::string matrix_to_json(const CMatrix& a) {
  nlohmann::json j;
  j["dim"] = a.rows();
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      entries.push_back({a(i, k).real(), a(i, k).imag()});
  j["entries"] = std::move(entries);
  return j.dump();
}

CMatrix matrix_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::uint64_t dim = j.at("dim").get<std::uint64_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != dim * dim)
    throw std::invalid_argument("matrix_from_json: entries size != dim^2");
  CMatrix m(dim, dim);
  std::size_t idx = 0;
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t k = 0; k < dim; ++k, ++idx)
      m(i, k) = Complex(entries[idx][0].get<double>(), entries[idx][1].get<double>());
  return m;
}

RationalMatrix::RationalMatrix(std::uint32_t dim) : dim_(dim), e_(std::size_t(dim) * dim) {
  if (dim == 0) throw std::invalid_argument("RationalMatrix: dimension must be >= 1");
}

RationalMatrix RationalMatrix::identity_of(std::uint32_t dim) {
  RationalMatrix m(dim);
  for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("rational product: dimension mismatch");
  RationalMatrix out(a.dim());
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    for (std::uint32_t k = 0; k < a.dim(); ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::uint32_t j = 0; j < a.dim(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("rational difference: dimension mismatch");
  RationalMatrix out(a.dim());
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    for (std::uint32_t j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// Integer rows with cleared denominators; rank is unchanged by row scaling.
std::vector<std::vector<BigInt>> integer_rows(const RationalMatrix& a) {
  std::vector<std::vector<BigInt>> rows(a.dim(), std::vector<BigInt>(a.dim()));
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    BigInt lcm_den = 1;
    for (std::uint32_t j = 0; j < a.dim(); ++j)
      lcm_den = boost::multiprecision::lcm(lcm_den, denominator(a.at(i, j)));
    for (std::uint32_t j = 0; j < a.dim(); ++j)
      rows[i][j] = numerator(a.at(i, j)) * (lcm_den / denominator(a.at(i, j)));
  }
  return rows;
}

void reduce_row_by_gcd(std::vector<BigInt>& row) {
  BigInt g = 0;
  for (const BigInt& v : row) g = boost::multiprecision::gcd(g, v);
  if (g > 1)
    for (BigInt& v : row) v /= g;
}

}  // namespace

std::uint32_t exact_rank(const RationalMatrix& a) {
  const std::uint32_t n = a.dim();
  auto rows = integer_rows(a);
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n && rank < n; ++col) {
    // partial pivot: largest magnitude entry in this column
    std::uint32_t pivot = rank;
    BigInt best = abs(rows[rank][col]);
    for (std::uint32_t r = rank + 1; r < n; ++r) {
      BigInt mag = abs(rows[r][col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::vector<BigInt>& prow = rows[rank];
    for (std::uint32_t r = rank + 1; r < n; ++r) {
      if (rows[r][col] == 0) continue;
      const BigInt f1 = prow[col];
      const BigInt f2 = rows[r][col];
      for (std::uint32_t j = col; j < n; ++j) rows[r][j] = rows[r][j] * f1 - prow[j] * f2;
      reduce_row_by_gcd(rows[r]);
    }
    ++rank;
  }
  return rank;
}

Rational rank_distance(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("rank_distance: dimension mismatch");
  return Rational(exact_rank(a - b), a.dim());
}

RationalMatrix rational_inverse(const RationalMatrix& a) {
  const std::uint32_t n = a.dim();
  RationalMatrix work = a;
  RationalMatrix inv = RationalMatrix::identity_of(n);
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t pivot = col;
    while (pivot < n && work.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("rational_inverse: singular matrix");
    if (pivot != col)
      for (std::uint32_t j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    const Rational p = work.at(col, col);
    for (std::uint32_t j = 0; j < n; ++j) {
      work.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == col || work.at(r, col) == 0) continue;
      const Rational f = work.at(r, col);
      for (std::uint32_t j = 0; j < n; ++j) {
        work.at(r, j) -= f * work.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

RationalMatrix perm_matrix_rational(const Permutation& sigma) {
  RationalMatrix m(sigma.degree());
  for (std::uint32_t i = 0; i < sigma.degree(); ++i) m.at(sigma.apply(i), i) = 1;
  return m;
}

}  // namespace mgw
