// Exact rational arithmetic used for all permutation- and rank-side metric
// values, plus integer helpers for comparing rationals against bounds of the
// form c / m^(p/q) without going through floating point.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace mgw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

Rational rat_pow(const Rational& base, unsigned exp);

// Parses "p/q", "p", or a decimal like "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

// "p/q" with the "/q" omitted when the denominator is 1.
std::string rat_to_string(const Rational& r);

// Decimal rendering used for the *_float CSV columns ("%.12g").
std::string rat_to_decimal(const Rational& r);
std::string double_to_string(double v);

// Smallest integer t >= 1 with t^q >= m^p, i.e. ceil(m^(p/q)).
std::uint64_t ceil_root(std::uint64_t m, unsigned p, unsigned q);

// Exact test of  value <= c * m^(-p/q)  for value, c >= 0.
bool leq_scaled_root(const Rational& value, const Rational& c, std::uint64_t m,
                     unsigned p, unsigned q);

// Exact test of  value <= m^(a/b)  with b > 0, a any sign, value >= 0.
bool leq_power(const Rational& value, std::uint64_t m, long a, unsigned b);

// Smallest m with m^(2*beta) >= 3*m^beta + 2 for beta = p/q, the threshold
// above which the cycle-count alignment step certifies its distance bound.
std::uint64_t m0_for_beta(unsigned p, unsigned q);

}  // namespace mgw
