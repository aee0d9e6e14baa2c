// Complex matrix arithmetic for the unitary groups under the normalized
// Hilbert-Schmidt metric, and exact rational matrices for the rank metric.
//
// Two norm scales appear side by side in this codebase and are named
// explicitly everywhere: frobenius(A) = sqrt(sum |a_ij|^2) and
// normalized_hs(A) = frobenius(A)/sqrt(n). The group metric on U_n is
// hs_distance(A,B) = frobenius(A-B) / (2 sqrt(n)), which has diameter 1.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mgw/permutation.hpp"
#include "mgw/rational.hpp"
#include "mgw/rng.hpp"

namespace mgw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTol = 1e-8;   // ||A*A - I||_F allowed on construction
inline constexpr double kFloatTol = 1e-9;     // default float comparison tolerance

double frobenius(const CMatrix& a);
double normalized_hs(const CMatrix& a);
bool all_finite(const CMatrix& a);

// A square complex matrix that is unitary up to kUnitaryTol in Frobenius norm.
class UnitaryElement {
 public:
  explicit UnitaryElement(CMatrix mat, double tol = kUnitaryTol);
  static UnitaryElement identity_of(std::uint32_t dim);

  std::uint32_t dim() const { return static_cast<std::uint32_t>(mat_.rows()); }
  const CMatrix& matrix() const { return mat_; }

  UnitaryElement adjoint() const;  // the group inverse

 private:
  CMatrix mat_;
};

UnitaryElement operator*(const UnitaryElement& a, const UnitaryElement& b);
UnitaryElement commutator(const UnitaryElement& a, const UnitaryElement& b);

// frobenius(A - B) / (2 sqrt(n)); values lie in [0, 1] on unitaries.
double hs_distance(const UnitaryElement& a, const UnitaryElement& b);

// 0/1 matrix with entry (sigma(i), i) = 1; a homomorphic image of S_n in U_n.
UnitaryElement perm_matrix(const Permutation& sigma);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Frobenius-nearest unitary U V* from the SVD A = U S V*.
// Throws std::domain_error when the smallest singular value is <= 1e-12
// (the minimizer is no longer unique there).
UnitaryElement nearest_unitary(const CMatrix& a);

// Same polar factor without the singularity check; `unique` reports whether
// the input cleared it.
struct PolarFactor {
  CMatrix unitary;
  bool unique;
};
PolarFactor polar_factor(const CMatrix& a);

UnitaryElement haar_unitary(std::uint32_t dim, Rng& rng);

// JSON form {"dim": n, "entries": [[re, im], ...]} row-major.
std::string matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const std::string& text);

// Dense matrix of exact rationals.
class RationalMatrix {
 public:
  explicit RationalMatrix(std::uint32_t dim);
  static RationalMatrix identity_of(std::uint32_t dim);

  std::uint32_t dim() const { return dim_; }
  Rational& at(std::uint32_t row, std::uint32_t col) { return e_[std::size_t(row) * dim_ + col]; }
  const Rational& at(std::uint32_t row, std::uint32_t col) const {
    return e_[std::size_t(row) * dim_ + col];
  }

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::uint32_t dim_;
  std::vector<Rational> e_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);

// Exact rank by fraction-free elimination (denominators cleared per row,
// integer pivoting on magnitude, rows re-reduced by their gcd).
std::uint32_t exact_rank(const RationalMatrix& a);

// rank(a - b) / n, an exact rational in [0, 1].
Rational rank_distance(const RationalMatrix& a, const RationalMatrix& b);

// Exact inverse by Gauss-Jordan; throws std::domain_error on singular input.
RationalMatrix rational_inverse(const RationalMatrix& a);

RationalMatrix perm_matrix_rational(const Permutation& sigma);

}  // namespace mgw
