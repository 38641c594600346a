// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/arith.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace manin {

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int gcd(std::initializer_list<Int> values) {
  Int g = 0;
  for (Int v : values) g = std::gcd(g, v);
  return g;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (Int d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<Int> primes_up_to(Int n) {
  std::vector<Int> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (Int i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (Int j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

int valuation(Int n, Int p) {
  if (n == 0) throw DomainError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& r, Int p) {
  if (sgn(r) == 0) throw DomainError("valuation of zero");
  return valuation(r.numerator(), p) - valuation(r.denominator(), p);
}

Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw ResourceError("integer power overflow");
  }
  return r;
}

Int mod_pow(Int base, Int exp, Int mod) {
  __int128 result = 1;
  __int128 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<Int>(result);
}

Int mod_inverse(Int a, Int mod) {
  Int t = 0, new_t = 1;
  Int r = mod, new_r = ((a % mod) + mod) % mod;
  while (new_r != 0) {
    Int q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw DomainError("not invertible modulo " + std::to_string(mod));
  return t < 0 ? t + mod : t;
}

FactorSieve::FactorSieve(Int n) : spf_(static_cast<std::size_t>(std::max<Int>(n, 1)) + 1, 0) {
  const auto size = static_cast<Int>(spf_.size());
  for (Int i = 2; i < size; ++i) {
    if (spf_[i] != 0) continue;
    for (Int j = i; j < size; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

void FactorSieve::distinct_primes(Int m, std::vector<Int>& out) const {
  out.clear();
  m = std::abs(m);
  if (m > limit()) throw DomainError("FactorSieve: argument above sieve limit");
  while (m > 1) {
    Int p = spf_[m];
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
}

Int count_coprime_symmetric(Int r, const std::vector<Int>& primes_of_g) {
  if (r < 0) return 0;
  // Inclusion-exclusion over squarefree divisors; multiples of d in [-r, r]
  // number 2*floor(r/d) + 1 (zero included).
  const std::size_t k = primes_of_g.size();
  Int total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Int d = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) d = d > r ? d : d * primes_of_g[i];
    }
    const Int c = d > r ? 1 : 2 * (r / d) + 1;
    total += (__builtin_popcountll(mask) & 1) ? -c : c;
  }
  return total;
}

namespace {

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("rational literal out of range");
  return r;
}

Int parse_int(std::string_view s) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError("malformed number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = static_cast<int>(parse_int(exp_text));
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    exponent -= static_cast<int>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  if (digits.empty()) throw DomainError("malformed number");
  Int mantissa = parse_int(digits);
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational(checked_mul(mantissa, ipow(10, exponent)));
  return Rational(mantissa, ipow(10, -exponent));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational rational_from_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw DomainError("cannot represent bound");
  return parse_rational(std::string_view(buf, ptr - buf));
}

}  // namespace manin
