// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/zeta.hpp>

#include "manin/archimedean.hpp"
#include "manin/geometry.hpp"
#include "manin/tamagawa.hpp"

using namespace manin;

namespace {

const double kPi = M_PI;

}  // namespace

TEST_SUITE("tamagawa") {
  TEST_CASE("local densities") {
    CHECK(local_density(load_model("BlP2-1"), 5) == Rational(36, 25));
    CHECK(local_density(load_model("P2"), 5) == Rational(31, 25));
    CHECK(local_density(load_model("BlP2-3"), 7) == Rational(78, 49));
    CHECK(local_density(load_model("P1"), 11) == Rational(12, 11));
  }

  TEST_CASE("Denef factor examples") {
    const auto& p1 = load_model("P1");
    // 1 + p^-1 (p - 1)/(p^2 - 1) at p = 7.
    CHECK(denef_local_factor(p1, 7, std::vector<double>{3}) == doctest::Approx(57.0 / 56));
    const auto& f1 = load_model("BlP2-1");
    CHECK(denef_local_factor(f1, 5, f1.rho().to_real()) == doctest::Approx(36.0 / 25));
    CHECK_THROWS_AS(denef_local_factor(p1, 3, std::vector<double>{3}), DomainError);
    CHECK_THROWS_AS(denef_local_factor(p1, 7, std::vector<double>{1}), DomainError);
  }

  TEST_CASE("density times p^n is the point count") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      for (Int p : primes_up_to(31)) {
        if (m.is_small_prime(p)) continue;
        Int total = 0;
        for (ComponentMask A = 0; A < (1u << m.rank()); ++A) total += brute_stratum_count(m, A, p);
        const Rational scaled = local_density(m, p) * Rational(ipow(p, m.dim));
        CHECK(scaled.denominator() == 1);
        CHECK(scaled.numerator() == total);
      }
    }
  }

  TEST_CASE("brute-force densities at 2 and 3 carry bounds") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      for (Int p : {2, 3}) {
        const auto f = local_density_factor(m, p);
        CHECK(f.provenance == Provenance::BruteForce);
        CHECK(f.error_bound > 0);
        CHECK(f.error_bound < 1e-6);
        // The catalog's point-count polynomial is a check, not an input.
        const double count = static_cast<double>(m.total_points().eval(p)) / std::pow(p, m.dim);
        CHECK(std::abs(f.value.real() - count) <= f.error_bound + 1e-12);
      }
    }
  }

  TEST_CASE("regularization residuals") {
    const auto& p2 = load_model("P2");
    for (Int p : {5, 7, 11, 101}) {
      CHECK(regularization_residual(p2, p, p2.rho().to_real()) == doctest::Approx(std::pow(p, -3.0)).epsilon(1e-9));
    }
    const auto& f1 = load_model("BlP2-1");
    CHECK(regularization_residual(f1, 5, f1.rho().to_real()) == doctest::Approx(49.0 / 625));  // |(1 - 1/25)^2 - 1|
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      auto s = m.rho().to_real();
      for (auto& x : s) x += 40;
      CHECK(regularization_residual(m, 7, s) < 1e-10);
    }
  }

  TEST_CASE("archimedean densities") {
    CHECK(archimedean_density(load_model("P1")).value.real() == doctest::Approx(4).epsilon(1e-12));
    CHECK(archimedean_density(load_model("P2")).value.real() == doctest::Approx(12).epsilon(1e-12));
    CHECK(archimedean_density(load_model("P3")).value.real() == doctest::Approx(32).epsilon(1e-12));
    // int int max(1,|x|,|y|)^-2 max(1,|y|)^-1 = 16, by the inner integrals
    // 3 for |x| < 1 and (3 + 2 ln|x|)/x^2 beyond.
    const auto f1 = archimedean_density(load_model("BlP2-1"));
    CHECK(std::abs(f1.value.real() - 16) <= f1.error_bound + 1e-9);
    CHECK(f1.error_bound < 1e-8);
    const auto f2 = archimedean_density(load_model("BlP2-2"));
    CHECK(std::abs(f2.value.real() - 20) <= f2.error_bound + 1e-9);
    CHECK(projective_density(1, 4) == doctest::Approx(8.0 / 3));
  }

  TEST_CASE("cyclotomic exponents reproduce the series") {
    // (1 - x^2)^2 = 1 - 2 x^2 + x^4.
    const auto b = cyclotomic_exponents({1, 0, -2, 0, 1}, 8);
    CHECK(b[2] == doctest::Approx(2));
    for (int k : {1, 3, 4, 5, 6, 7, 8}) CHECK(b[k] == doctest::Approx(0).epsilon(1e-12));
    CHECK_THROWS_AS(cyclotomic_exponents({2, 1}, 3), DomainError);
  }

  TEST_CASE("Euler products telescope to zeta values") {
    const auto p2 = euler_product(load_model("P2"), 1000);
    CHECK(p2.complete == doctest::Approx(1 / boost::math::zeta(3.0)).epsilon(1e-12));
    const auto f1 = euler_product(load_model("BlP2-1"), 1000);
    CHECK(f1.complete == doctest::Approx(std::pow(6 / (kPi * kPi), 2)).epsilon(1e-12));
    CHECK_THROWS_AS(euler_product(load_model("P1"), 50), DomainError);
  }

  TEST_CASE("partial products are Cauchy within their tail bound") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      auto a = euler_product(m, 100);
      for (Int P : {200, 400}) {
        const auto b = euler_product(m, P);
        CHECK(std::abs(b.partial - a.partial) <= a.partial_tail * a.partial);
        CHECK(std::abs(a.partial / a.complete - 1) <= a.partial_tail);
        CHECK(b.partial_tail < a.partial_tail);
        CHECK(std::abs(a.complete - b.complete) <= a.complete_bound + b.complete_bound);
        a = b;
      }
    }
  }

  TEST_CASE("predicted constants on projective spaces match 2^n / zeta(n + 1)") {
    for (int n = 1; n <= 3; ++n) {
      const auto& m = load_model(n == 1 ? "P1" : n == 2 ? "P2" : "P3");
      const auto pc = predicted_constant(m);
      CHECK(pc.value == doctest::Approx(std::pow(2.0, n) / boost::math::zeta(n + 1.0)).epsilon(1e-9));
      CHECK(pc.bound < 1e-6);
    }
    const auto p1 = tamagawa_number(load_model("P1"), 1000);
    CHECK(p1.tamagawa == doctest::Approx(24 / (kPi * kPi)).epsilon(1e-12));
    const auto p2 = tamagawa_number(load_model("P2"), 1000);
    CHECK(p2.tamagawa == doctest::Approx(12 / boost::math::zeta(3.0)).epsilon(1e-12));
  }

  TEST_CASE("BlP2-1 constant with the computed archimedean density") {
    // Euler part 36/pi^4 against density 16: 16 * 36 / pi^4 / 6 = 96/pi^4.
    const auto pc = predicted_constant(load_model("BlP2-1"), 2000);
    CHECK(pc.value == doctest::Approx(96 / std::pow(kPi, 4)).epsilon(1e-9));
    CHECK(pc.tamagawa.tamagawa == doctest::Approx(576 / std::pow(kPi, 4)).epsilon(1e-9));
  }

  TEST_CASE("constants are positive and bounded for every model") {
    for (ModelId id : all_model_ids()) {
      const auto pc = predicted_constant(load_model(id));
      CHECK(pc.value > 0);
      CHECK(pc.bound < 1e-3 * pc.value);
    }
  }
}
