// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/zeta.hpp>

#include "manin/archimedean.hpp"
#include "manin/fourier.hpp"
#include "manin/tamagawa.hpp"

using namespace manin;

namespace {

std::vector<double> rho_plus(const VarietyModel& m, double k) {
  auto s = m.rho().to_real();
  for (auto& x : s) x += k;
  return s;
}

}  // namespace

TEST_SUITE("fourier") {
  TEST_CASE("good primes and reduced divisors") {
    const auto& f3 = load_model("BlP2-3");
    const std::vector<Int> a{2, 3};
    CHECK(is_good_prime(f3, a, 5));
    CHECK_FALSE(is_good_prime(f3, a, 3));
    CHECK_FALSE(is_good_prime(f3, std::vector<Int>{5, 10}, 5));
    CHECK(bad_primes(f3, std::vector<Int>{35, 70}) == std::vector<Int>{5, 7});
    // 2X + 3Y passes through (1:1:0) modulo 5 but not over Q.
    CHECK(divisor_multiplicities(f3, a).d[3] == 1);
    CHECK(reduced_divisor(f3, a, 5).d[3] == 0);
    CHECK(reduced_divisor(f3, a, 7).d == divisor_multiplicities(f3, a).d);
  }

  TEST_CASE("boundary incidences") {
    CHECK(boundary_incidence(load_model("P1"), std::vector<Int>{1}, 0, 7) == 0);
    CHECK(boundary_incidence(load_model("P2"), std::vector<Int>{1, 2}, 0, 7) == 1);
    CHECK(boundary_incidence(load_model("P3"), std::vector<Int>{1, 2, 0}, 0, 7) == 8);
    const auto& f1 = load_model("BlP2-1");
    CHECK(boundary_incidence(f1, std::vector<Int>{0, 1}, 0, 7) == 0);
    CHECK(boundary_incidence(f1, std::vector<Int>{0, 1}, 1, 7) == 1);
    CHECK(boundary_incidence(f1, std::vector<Int>{1, 0}, 0, 7) == 1);
  }

  TEST_CASE("closed form on P1") {
    const auto& p1 = load_model("P1");
    const auto g = closed_form_good_prime(p1, 7, std::vector<Int>{1}, std::vector<double>{3});
    CHECK(g.main == doctest::Approx(1 - std::pow(7.0, -3)));
    CHECK(g.divisor.a1 == 1);
    CHECK_THROWS_AS(closed_form_good_prime(p1, 7, std::vector<Int>{7}, std::vector<double>{3}), DomainError);
    CHECK_THROWS_AS(closed_form_good_prime(p1, 3, std::vector<Int>{1}, std::vector<double>{3}), DomainError);
  }

  TEST_CASE("closed form matches brute force within ET on the grid") {
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      std::vector<std::vector<Int>> chars = {{1, 0}, {0, 1}, {1, 1}, {2, 3}};
      if (m.dim == 1) chars = {{1}, {2}};
      for (auto& a : chars) a.resize(m.dim, 0);
      for (Int p : {5, 7}) {
        const auto s = rho_plus(m, 1);
        for (const auto& a : chars) {
          const auto g = closed_form_good_prime(m, p, a, s);
          const std::vector<Rational> ar(a.begin(), a.end());
          const auto b = brute_padic_fourier(m, p, ar, s, depth_for_budget(m, p, ar, 1e6));
          CHECK_MESSAGE(std::abs(b.value - Complex(g.main)) <= g.et_bound + b.error_bound, m.name(), " p=", p);
        }
      }
    }
  }

  TEST_CASE("trivial character dispatches to the Denef factor") {
    const auto& f1 = load_model("BlP2-1");
    const auto s = rho_plus(f1, 1);
    const auto v = local_fourier(f1, 7, std::vector<Int>{0, 0}, s);
    CHECK(v.provenance == Provenance::ClosedForm);
    CHECK(v.value.real() == doctest::Approx(denef_local_factor(f1, 7, s)));
    const auto w = local_fourier(f1, 7, std::vector<Int>{7, 14}, s);
    CHECK(w.provenance == Provenance::BruteForce);
    const auto small = local_fourier(f1, 3, std::vector<Int>{1, 0}, s);
    CHECK(small.provenance == Provenance::BruteForce);
  }

  TEST_CASE("zeta acceleration follows the pole set of the character") {
    const auto& f1 = load_model("BlP2-1");
    const auto s = rho_plus(f1, 1);
    for (const auto& a : {std::vector<Int>{0, 1}, std::vector<Int>{1, 0}, std::vector<Int>{1, 1},
                          std::vector<Int>{0, 0}}) {
      const auto f = finite_fourier(f1, a, s);
      const ComponentMask expect =
          a[0] == 0 && a[1] == 0 ? (1u << f1.rank()) - 1 : divisor_multiplicities(f1, a).a0;
      CHECK(f.accelerated == expect);
    }
    const auto& p1 = load_model("P1");
    CHECK(finite_fourier(p1, std::vector<Int>{3}, std::vector<double>{4}).accelerated == 0);
  }

  TEST_CASE("trivial character global factor is the Tamagawa-type product") {
    // On P1 at s = 4 each factor is (1 - p^-4)/(1 - p^-3).
    const auto& p1 = load_model("P1");
    const std::vector<double> s{4};
    const auto g = global_fourier(p1, std::vector<Int>{0}, s);
    CHECK(g.arch.value.real() == doctest::Approx(8.0 / 3));
    double direct = 8.0 / 3;
    for (Int p : primes_up_to(20000)) direct *= 1 + (1.0 - 1.0 / p) / (std::pow(p, 3.0) - 1);
    CHECK(std::abs(g.value - direct) <= g.bound + 1e-8);
    const double via_zeta = 8.0 / 3 * boost::math::zeta(3.0) / boost::math::zeta(4.0);
    CHECK(g.value == doctest::Approx(via_zeta).epsilon(1e-9));
  }

  TEST_CASE("assembled factor at a = 3 matches brute force at every p <= 50") {
    const auto& p1 = load_model("P1");
    const std::vector<double> s{4};
    const std::vector<Int> a{3};
    const std::vector<Rational> ar{Rational(3)};
    FourierOptions opts;
    opts.p_max = 50;
    const auto f = finite_fourier(p1, a, s, opts);
    Complex brute = 1;
    double rel = 0;
    for (Int p : primes_up_to(50)) {
      const auto b = brute_padic_fourier(p1, p, ar, s, depth_for_budget(p1, p, ar, 1e6));
      brute *= b.value;
      rel += b.error_bound / std::abs(b.value);
    }
    CHECK(std::find(f.brute_primes.begin(), f.brute_primes.end(), 3) != f.brute_primes.end());
    // The tail above 50 is part of f's value but not of the brute product.
    CHECK(std::abs(f.value - brute.real()) <= f.bound + std::abs(brute) * (rel + f.tail_bound) + 1e-12);
  }

  TEST_CASE("archimedean transform on the line") {
    const auto& p1 = load_model("P1");
    const std::vector<double> s{4};
    const auto a0 = arch_fourier(p1, std::vector<Rational>{Rational(0)}, s);
    CHECK(a0.value.real() == doctest::Approx(8.0 / 3));
    const auto a1 = arch_fourier(p1, std::vector<Rational>{Rational(1)}, s);
    CHECK(std::abs(a1.value) < 8.0 / 3);
    // Even integrand: the transform is real.
    CHECK(std::abs(a1.value.imag()) <= a1.error_bound + 1e-14);
    // Closed form check at s = 4: 2 int_0^1 cos(2 pi x) dx = 0 plus the tail.
    const auto tail = cosine_tail(4, 2 * M_PI);
    CHECK(a1.value.real() == doctest::Approx(2 * tail.value).epsilon(1e-9));
    const auto a4 = arch_fourier(p1, std::vector<Rational>{Rational(4)}, s);
    const auto a8 = arch_fourier(p1, std::vector<Rational>{Rational(8)}, s);
    CHECK(std::abs(a8.value) < std::abs(a4.value));
    CHECK_THROWS_AS(arch_fourier(load_model("P2"), std::vector<Rational>{1, 0}, rho_plus(load_model("P2"), 1)),
                    CapabilityError);
  }

  TEST_CASE("truncated height zeta function") {
    const auto& p1 = load_model("P1");
    const auto z = zeta_truncated(p1, p1.rho(), 2, Rational(10000));
    // Z(2) = 4 zeta(3)/zeta(4) - 1 in closed form for the max-height on P1.
    const double exact = 4 * boost::math::zeta(3.0) / boost::math::zeta(4.0) - 1;
    CHECK(std::abs(z.partial + z.tail_estimate - exact) <= z.tail_bound);
    CHECK(z.tail_estimate / z.partial < 1e-3);
    const auto big = zeta_truncated(p1, p1.rho(), 60, Rational(100));
    CHECK(big.partial == doctest::Approx(3).epsilon(1e-12));  // x = 0, +-1 have height 1
    CHECK_THROWS_AS(zeta_truncated(p1, p1.rho(), 1, Rational(100)), DomainError);
  }

  TEST_CASE("Poisson identity on P1") {
    const auto& p1 = load_model("P1");
    const auto r = poisson_check(p1, p1.rho(), 2, Rational(100000), 50, 1000);
    CHECK(r.diff <= r.combined_bound);
    CHECK(r.relative <= 1e-2);
    const auto zero = poisson_check(p1, p1.rho(), 2, Rational(100000), 0, 1000);
    CHECK(zero.rhs < zero.lhs);
    CHECK(zero.diff <= zero.combined_bound);
    CHECK_THROWS_AS(poisson_check(load_model("P2"), load_model("P2").rho(), 2, Rational(1000), 5, 1000),
                    CapabilityError);
  }
}
