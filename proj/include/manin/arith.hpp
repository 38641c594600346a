// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace manin {

using Int = std::int64_t;
using Rational = boost::rational<Int>;

// Error taxonomy. The CLI maps these onto exit codes.
struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mixed int/long comparisons against boost::rational<long> recurse forever.
inline int sgn(const Rational& r) { return (r.numerator() > 0) - (r.numerator() < 0); }

Int gcd(Int a, Int b);
Int gcd(std::initializer_list<Int> values);

bool is_prime(Int n);
std::vector<Int> primes_up_to(Int n);

/// Exponent of p in n; n != 0.
int valuation(Int n, Int p);
/// Exponent of p in the rational r; r != 0.
int valuation(const Rational& r, Int p);

Int ipow(Int base, int exp);
Int mod_pow(Int base, Int exp, Int mod);
Int mod_inverse(Int a, Int mod);

/// Smallest-prime-factor table on [0, n].
class FactorSieve {
 public:
  explicit FactorSieve(Int n);
  Int limit() const { return static_cast<Int>(spf_.size()) - 1; }
  /// Distinct prime divisors of |m|, m <= limit().
  void distinct_primes(Int m, std::vector<Int>& out) const;

 private:
  std::vector<std::uint32_t> spf_;
};

/// Number of integers t with |t| <= r and gcd(t, g) == 1, given the distinct
/// primes of g. gcd(0, g) == 1 only when g == 1.
Int count_coprime_symmetric(Int r, const std::vector<Int>& primes_of_g);

/// Parses "3", "-2/5", "1.25", "1e6" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Round-to-nearest double of a rational, but exact for dyadic input.
Rational rational_from_double(double x);

}  // namespace manin
