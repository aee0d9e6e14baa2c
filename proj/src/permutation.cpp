#include "mgw/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mgw {

namespace {

void require_same_degree(const Permutation& a, const Permutation& b, const char* op) {
  if (a.degree() != b.degree())
    throw std::invalid_argument(std::string(op) + ": degree mismatch (" +
                                std::to_string(a.degree()) + " vs " +
                                std::to_string(b.degree()) + ")");
}

}  // namespace

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("Permutation: degree must be >= 1");
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::uint32_t degree) {
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  return Permutation(std::move(im));
}

std::string Permutation::to_one_line() const {
  std::ostringstream out;
  out << degree() << ":";
  for (std::uint32_t v : images_) out << ' ' << v + 1;
  return out.str();
}

Permutation Permutation::from_one_line(const std::string& text) {
  std::istringstream in(text);
  std::uint64_t n = 0;
  char colon = 0;
  if (!(in >> n >> colon) || colon != ':' || n == 0)
    throw std::invalid_argument("one-line permutation must start with \"n:\"");
  std::vector<std::uint32_t> im;
  im.reserve(n);
  std::uint64_t v;
  while (in >> v) {
    if (v < 1 || v > n) throw std::invalid_argument("one-line permutation: point out of range");
    im.push_back(static_cast<std::uint32_t>(v - 1));
  }
  if (im.size() != n) throw std::invalid_argument("one-line permutation: wrong number of images");
  return Permutation(std::move(im));
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  bool any = false;
  for (const auto& cyc : cycles_of(*this)) {
    if (cyc.size() == 1) continue;
    any = true;
    out << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) out << ' ';
      out << cyc[i] + 1;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation Permutation::from_cycles(const std::string& text, std::uint32_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t max_point = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("cycle text: expected '('");
    ++i;
    std::vector<std::uint32_t> cyc;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::uint64_t v = 0;
      bool got = false;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        got = true;
        ++i;
      }
      if (!got) throw std::invalid_argument("cycle text: expected a point or ')'");
      if (v == 0) throw std::invalid_argument("cycle text: points are 1-based");
      cyc.push_back(static_cast<std::uint32_t>(v - 1));
      max_point = std::max<std::uint32_t>(max_point, static_cast<std::uint32_t>(v));
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;  // tolerate comma separators
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  const std::uint32_t n = degree ? degree : std::max<std::uint32_t>(max_point, 1);
  if (max_point > n) throw std::invalid_argument("cycle text: point exceeds requested degree");
  std::vector<std::uint32_t> im(n);
  std::iota(im.begin(), im.end(), 0u);
  std::vector<bool> used(n, false);
  for (const auto& cyc : cycles) {
    for (std::uint32_t p : cyc) {
      if (used[p]) throw std::invalid_argument("cycle text: cycles are not disjoint");
      used[p] = true;
    }
    for (std::size_t j = 0; j < cyc.size(); ++j) im[cyc[j]] = cyc[(j + 1) % cyc.size()];
  }
  return Permutation(std::move(im));
}

std::uint32_t CycleProfile::width() const {
  std::uint32_t w = 1;
  for (const auto& [len, cnt] : counts)
    if (cnt > 0) w = std::max(w, len);
  return w;
}

std::uint64_t CycleProfile::count(std::uint32_t length) const {
  auto it = counts.find(length);
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t CycleProfile::total_cycles() const {
  std::uint64_t t = 0;
  for (const auto& [len, cnt] : counts) t += cnt;
  return t;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b, "compose");
  std::vector<std::uint32_t> im(a.degree());
  for (std::uint32_t i = 0; i < a.degree(); ++i) im[i] = a.apply(b.apply(i));
  return Permutation(std::move(im));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::uint32_t> im(p.degree());
  for (std::uint32_t i = 0; i < p.degree(); ++i) im[p.apply(i)] = i;
  return Permutation(std::move(im));
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b, "commutator");
  return compose(compose(a, b), compose(inverse(a), inverse(b)));
}

Rational hamming_distance(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b, "hamming_distance");
  std::uint64_t mismatches = 0;
  for (std::uint32_t i = 0; i < a.degree(); ++i)
    if (a.apply(i) != b.apply(i)) ++mismatches;
  return Rational(mismatches, a.degree());
}

CycleProfile cycle_profile(const Permutation& p) {
  CycleProfile profile;
  profile.degree = p.degree();
  std::vector<bool> seen(p.degree(), false);
  for (std::uint32_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::uint32_t len = 0;
    for (std::uint32_t i = start; !seen[i]; i = p.apply(i)) {
      seen[i] = true;
      ++len;
    }
    ++profile.counts[len];
  }
  return profile;
}

std::vector<std::vector<std::uint32_t>> cycles_of(const Permutation& p) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(p.degree(), false);
  for (std::uint32_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> cyc;
    for (std::uint32_t i = start; !seen[i]; i = p.apply(i)) {
      seen[i] = true;
      cyc.push_back(i);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

Permutation product_action(const std::vector<Permutation>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_action: need at least one factor");
  for (const auto& f : factors)
    if (f.degree() != 3) throw std::invalid_argument("product_action: factors must have degree 3");
  const std::size_t l = factors.size();
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < l; ++i) {
    n *= 3;
    if (n > (1ull << 31)) throw std::invalid_argument("product_action: 3^l too large");
  }
  std::vector<std::uint32_t> im(n);
  std::vector<std::uint32_t> digits(l);
  for (std::uint64_t t = 0; t < n; ++t) {
    // big-endian base-3 digits of t: digit j is coordinate j+1 minus one
    std::uint64_t rest = t;
    for (std::size_t j = l; j-- > 0;) {
      digits[j] = static_cast<std::uint32_t>(rest % 3);
      rest /= 3;
    }
    std::uint64_t image = 0;
    for (std::size_t j = 0; j < l; ++j) image = image * 3 + factors[j].apply(digits[j]);
    im[t] = static_cast<std::uint32_t>(image);
  }
  return Permutation(std::move(im));
}

Permutation diagonal_embed(const Permutation& sigma, std::uint32_t k, std::uint32_t n) {
  const std::uint64_t m = sigma.degree();
  if (k == 0) throw std::invalid_argument("diagonal_embed: k must be positive");
  if (n < m * k) throw std::invalid_argument("diagonal_embed: n < k*m");
  std::vector<std::uint32_t> im(n);
  std::iota(im.begin(), im.end(), 0u);
  for (std::uint32_t j = 0; j < k; ++j)
    for (std::uint32_t i = 0; i < m; ++i) im[j * m + i] = j * m + sigma.apply(i);
  return Permutation(std::move(im));
}

Permutation pad_embed(const Permutation& sigma, std::uint32_t n) {
  if (n < sigma.degree()) throw std::invalid_argument("pad_embed: n < degree");
  std::vector<std::uint32_t> im(n);
  std::iota(im.begin(), im.end(), 0u);
  for (std::uint32_t i = 0; i < sigma.degree(); ++i) im[i] = sigma.apply(i);
  return Permutation(std::move(im));
}

Permutation random_permutation(std::uint32_t degree, Rng& rng) {
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  for (std::uint32_t i = degree; i > 1; --i)
    std::swap(im[i - 1], im[rng.below(i)]);
  return Permutation(std::move(im));
}

std::uint64_t factorial(std::uint32_t n) {
  if (n > 20) throw std::overflow_error("factorial: overflow past 20!");
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Permutation permutation_at(std::uint32_t degree, std::uint64_t index) {
  std::vector<std::uint32_t> pool(degree);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<std::uint32_t> im;
  im.reserve(degree);
  std::uint64_t rest = index;
  for (std::uint32_t i = degree; i > 0; --i) {
    const std::uint64_t block = factorial(i - 1);
    const std::uint64_t d = rest / block;
    rest %= block;
    if (d >= pool.size()) throw std::out_of_range("permutation_at: index >= degree!");
    im.push_back(pool[d]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return Permutation(std::move(im));
}

}  // namespace mgw
