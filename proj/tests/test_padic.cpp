// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "manin/acceptance.hpp"
#include "manin/padic.hpp"
#include "manin/tamagawa.hpp"

using namespace manin;

namespace {

Complex expi(double t) { return std::polar(1.0, 2 * M_PI * t); }

std::vector<double> rho_plus(const VarietyModel& m, double k) {
  auto s = m.rho().to_real();
  for (auto& x : s) x += k;
  return s;
}

}  // namespace

TEST_SUITE("padic") {
  TEST_CASE("character values use the p-primary fractional part") {
    CHECK(std::abs(character_value(5, Rational(1, 5)) - expi(0.2)) < 1e-15);
    CHECK(std::abs(character_value(5, Rational(2)) - Complex(1)) < 1e-15);
    CHECK(std::abs(character_value(5, Rational(7, 25)) - expi(7.0 / 25)) < 1e-15);
    // 1/10 = 3/5 - 1/2: only the 5-part counts at p = 5.
    CHECK(std::abs(character_value(5, Rational(1, 10)) - expi(3.0 / 5)) < 1e-15);
  }

  TEST_CASE("character sum examples") {
    CHECK(std::abs(character_sum(5, 1, 1, 1) - Complex(-0.2)) < 1e-12);
    CHECK(std::abs(character_sum(7, 3, 2, 0) - Complex(6.0 / 7)) < 1e-12);
    CHECK(std::abs(character_sum(5, 1, 1, 2)) < 1e-9);
    CHECK_THROWS_AS(character_sum(3, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(character_sum(5, 10, 1, 1), DomainError);
  }

  TEST_CASE("character sums follow the trichotomy, both evaluation methods") {
    for (Int p : {5, 7, 11, 13}) {
      for (int n = 1; n <= 3; ++n) {
        for (int d = 0; d <= 3; ++d) {
          const Complex expect(charsum_trichotomy(p, n, d));
          for (Int u = 1; u < p; ++u) {
            CHECK(std::abs(character_sum(p, u, n, d, SumMethod::Lifted) - expect) < 1e-9);
            if (n * d <= 4) CHECK(std::abs(character_sum(p, u, n, d, SumMethod::Direct) - expect) < 1e-9);
          }
        }
      }
    }
  }

  TEST_CASE("brute force at the trivial character matches the closed integral on P1") {
    // int max(1, |x|_p)^{-3} dx = 1 + 1/(p (p + 1)).
    const auto& p1 = load_model("P1");
    const std::vector<Rational> zero{Rational(0)};
    const std::vector<double> s{3};
    for (Int p : {2, 3, 5, 7}) {
      const auto b = brute_padic_fourier(p1, p, zero, s, 3);
      const double exact = 1 + 1.0 / (p * (p + 1));
      CHECK(b.provenance == Provenance::BruteForce);
      CHECK(b.error_bound > 0);
      CHECK(std::abs(b.value.real() - exact) <= b.error_bound);
      CHECK(std::abs(b.value.imag()) <= b.error_bound);
    }
  }

  TEST_CASE("brute force equals the Denef factor on every model") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      const std::vector<Rational> zero(m.dim, Rational(0));
      for (Int p : {5, 7}) {
        const auto s = rho_plus(m, 1);
        const auto b = brute_padic_fourier(m, p, zero, s, 3);
        CHECK(std::abs(b.value.real() - denef_local_factor(m, p, s)) <= b.error_bound);
        CHECK(b.error_bound <= 1e-3);
      }
    }
  }

  TEST_CASE("truncation bounds shrink with depth") {
    const auto& m = load_model("BlP2-1");
    const std::vector<Rational> zero(2, Rational(0));
    const auto s = rho_plus(m, 1);
    double prev = INFINITY;
    for (int depth = 1; depth <= 3; ++depth) {
      const auto b = brute_padic_fourier(m, 5, zero, s, depth);
      CHECK(b.error_bound <= prev);
      if (depth == 2) CHECK(b.error_bound < 1e-6);
      prev = b.error_bound;
    }
  }

  TEST_CASE("ramified characters integrate to zero") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      std::vector<Rational> a(m.dim, Rational(0));
      a[m.dim - 1] = Rational(2, 5);
      const auto s = rho_plus(m, 1);
      const auto b = brute_padic_fourier(m, 5, a, s, depth_for_budget(m, 5, a, 1e6));
      CHECK(std::abs(b.value) <= b.error_bound);
    }
  }

  TEST_CASE("modulus is bounded by the trivial character") {
    const auto& m = load_model("BlP2-2");
    const auto s = rho_plus(m, 1);
    const std::vector<Rational> zero(2, Rational(0));
    const auto trivial = brute_padic_fourier(m, 7, zero, s, 2);
    for (const auto& a : {std::vector<Rational>{1, 0}, std::vector<Rational>{2, 3}, std::vector<Rational>{7, 0}}) {
      const auto b = brute_padic_fourier(m, 7, a, s, 2);
      CHECK(std::abs(b.value) <= trivial.value.real() + trivial.error_bound + b.error_bound);
    }
  }

  TEST_CASE("divergent parameters are refused") {
    const auto& p1 = load_model("P1");
    const std::vector<Rational> zero{Rational(0)};
    const std::vector<double> s{1.0};
    CHECK_THROWS_AS(brute_padic_fourier(p1, 5, zero, s, 2), DomainError);
    CHECK(pole_exponents(p1, std::vector<double>{3.0}) == std::vector<double>{2.0});
  }

  TEST_CASE("cell budget picks a depth") {
    const auto& m = load_model("P2");
    const std::vector<Rational> zero(2, Rational(0));
    const int d = depth_for_budget(m, 5, zero, 1e5);
    CHECK(d >= 1);
    CHECK(brute_cell_count(m, 5, zero, d) <= 1e5);
  }
}
