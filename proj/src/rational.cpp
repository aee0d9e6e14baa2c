#include "mgw/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace mgw {

Rational rat_pow(const Rational& base, unsigned exp) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  using boost::multiprecision::pow;
  if (exp == 0) return Rational(1);
  return Rational(pow(numerator(base), exp), pow(denominator(base), exp));
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto bad = [&] { throw std::invalid_argument("bad rational literal: '" + text + "'"); };
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') {
    negative = text[i] == '-';
    ++i;
  }
  if (i >= text.size()) bad();
  BigInt num = 0;
  bool any_digit = false;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    num = num * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (!any_digit) bad();
  BigInt den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    BigInt d = 0;
    bool d_digit = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      d = d * 10 + (text[i] - '0');
      d_digit = true;
      ++i;
    }
    if (!d_digit || d == 0) bad();
    den = d;
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      ++i;
    }
  }
  if (i != text.size()) bad();
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::string rat_to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

std::string rat_to_decimal(const Rational& r) { return double_to_string(to_double(r)); }

std::string double_to_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t ceil_root(std::uint64_t m, unsigned p, unsigned q) {
  using boost::multiprecision::pow;
  if (q == 0) throw std::invalid_argument("ceil_root: q must be positive");
  const BigInt target = pow(BigInt(m), p);
  std::uint64_t lo = 1, hi = 1;
  while (pow(BigInt(hi), q) < target) {
    lo = hi;
    hi *= 2;
  }
  while (lo < hi) {  // first t with t^q >= m^p
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow(BigInt(mid), q) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

bool leq_scaled_root(const Rational& value, const Rational& c, std::uint64_t m,
                     unsigned p, unsigned q) {
  using boost::multiprecision::pow;
  if (value < 0) return true;
  // value <= c / m^(p/q)  <=>  value^q * m^p <= c^q
  return rat_pow(value, q) * Rational(pow(BigInt(m), p)) <= rat_pow(c, q);
}

bool leq_power(const Rational& value, std::uint64_t m, long a, unsigned b) {
  using boost::multiprecision::pow;
  if (value < 0) return true;
  if (a >= 0) return rat_pow(value, b) <= Rational(pow(BigInt(m), static_cast<unsigned>(a)));
  return rat_pow(value, b) * Rational(pow(BigInt(m), static_cast<unsigned>(-a))) <= 1;
}

std::uint64_t m0_for_beta(unsigned p, unsigned q) {
  using boost::multiprecision::pow;
  if (p == 0 || q == 0) throw std::invalid_argument("m0_for_beta: beta must be positive");
  // The condition m^(2b) >= 3 m^b + 2 holds iff m^b >= (3 + sqrt(17)) / 2,
  // i.e. iff 2^q m^p >= (3 + sqrt(17))^q.  Expand the right side in Z[sqrt17]
  // as X + Y*sqrt(17) and compare exactly.
  BigInt X = 1, Y = 0;
  for (unsigned i = 0; i < q; ++i) {
    const BigInt nx = 3 * X + 17 * Y;
    const BigInt ny = X + 3 * Y;
    X = nx;
    Y = ny;
  }
  for (std::uint64_t m = 1;; ++m) {
    const BigInt lhs = pow(BigInt(2), q) * pow(BigInt(m), p);
    if (lhs >= X && (lhs - X) * (lhs - X) >= 17 * Y * Y) return m;
  }
}

}  // namespace mgw
