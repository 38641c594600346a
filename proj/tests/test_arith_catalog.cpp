// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "manin/catalog.hpp"

using namespace manin;

TEST_SUITE("arith") {
  TEST_CASE("parse_rational accepts fractions, decimals and exponents") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("1e6") == Rational(1000000));
    CHECK(parse_rational("1e+06") == Rational(1000000));
    CHECK(parse_rational("-2.5") == Rational(-5, 2));
    CHECK(parse_rational(" 12 ") == Rational(12));
    CHECK(parse_rational("1.5e-2") == Rational(3, 200));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
  }

  TEST_CASE("to_string round trips") {
    for (const char* s : {"7", "-3/8", "1/2"}) CHECK(to_string(parse_rational(s)) == s);
  }

  TEST_CASE("valuations and modular arithmetic") {
    CHECK(valuation(Int{250}, 5) == 3);
    CHECK(valuation(Rational(7, 25), 5) == -2);
    CHECK_THROWS_AS(valuation(Int{0}, 5), DomainError);
    CHECK(mod_pow(3, 100, 7) == 4);  // 3^6 = 1 mod 7, 3^4 = 81 = 4
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(5, 10), DomainError);
    CHECK(ipow(5, 3) == 125);
    CHECK_THROWS_AS(ipow(10, 30), ResourceError);
  }

  TEST_CASE("primes and sieve agree with trial division") {
    const auto ps = primes_up_to(200);
    CHECK(ps.size() == 46);
    for (Int n = 0; n <= 200; ++n) CHECK(is_prime(n) == std::binary_search(ps.begin(), ps.end(), n));
    FactorSieve sieve(1000);
    std::vector<Int> out;
    sieve.distinct_primes(-360, out);
    CHECK(out == std::vector<Int>{2, 3, 5});
  }

  TEST_CASE("count_coprime_symmetric matches direct counting") {
    for (Int g : {1, 6, 30, 49}) {
      std::vector<Int> primes;
      for (Int p : primes_up_to(g)) {
        if (g % p == 0) primes.push_back(p);
      }
      for (Int r : {0, 1, 7, 50}) {
        Int direct = 0;
        for (Int x = -r; x <= r; ++x) direct += gcd(x, g) == 1;
        CHECK(count_coprime_symmetric(r, primes) == direct);
      }
    }
  }
}

TEST_SUITE("catalog") {
  TEST_CASE("six models with the expected multiplicities") {
    CHECK(all_model_ids().size() == 6);
    CHECK(load_model("P1").rho() == PicardVector::parse("2"));
    CHECK(load_model("P3").rho() == PicardVector::parse("4"));
    CHECK(load_model("BlP2-1").rho() == PicardVector::parse("3,2"));
    CHECK(load_model("BlP2-3").rho() == PicardVector::parse("3,2,2,2"));
    CHECK_THROWS_AS(load_model("P7"), CatalogError);
  }

  TEST_CASE("every boundary multiplicity is at least two") {
    for (ModelId id : all_model_ids()) {
      for (const auto& c : load_model(id).components) CHECK(c.rho >= 2);
    }
  }

  TEST_CASE("Picard vectors parse and combine") {
    const auto v = PicardVector::parse("1/2,3");
    CHECK(v.size() == 2);
    CHECK(v[0] == Rational(1, 2));
    CHECK((v + v) == PicardVector::parse("1,6"));
    CHECK((v * Rational(2)) == PicardVector::parse("1,6"));
    CHECK(v.str() == "1/2,3");
    CHECK(v.is_interior_effective());
    CHECK_FALSE(PicardVector::parse("0,1").is_interior_effective());
  }

  TEST_CASE("generator exponents express rho on the blow-ups") {
    // rho = (3 - r) H + sum F_i.
    for (const char* name : {"BlP2-1", "BlP2-2", "BlP2-3"}) {
      const auto& m = load_model(name);
      const auto e = m.generator_exponents(m.rho());
      const int r = static_cast<int>(m.rank()) - 1;
      CHECK(e[0] == Rational(3 - r));
      for (int i = 1; i <= r; ++i) CHECK(e[i] == Rational(1));
    }
  }

  TEST_CASE("small primes are 2 and 3") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      CHECK(m.is_small_prime(2));
      CHECK(m.is_small_prime(3));
      CHECK_FALSE(m.is_small_prime(5));
    }
  }
}
