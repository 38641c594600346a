// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "manin/heights.hpp"

using namespace manin;

namespace {

RationalPoint random_point(std::mt19937_64& rng, int dim, Int range) {
  std::uniform_int_distribution<Int> zd(1, range), xd(-range, range);
  std::vector<Int> c(dim + 1);
  c[0] = zd(rng);
  for (int i = 1; i <= dim; ++i) c[i] = xd(rng);
  Int g = 0;
  for (Int v : c) g = std::gcd(g, v);
  for (auto& v : c) v /= g;
  return RationalPoint(c);
}

}  // namespace

TEST_SUITE("heights") {
  TEST_CASE("points are primitive with positive Z") {
    CHECK_THROWS_AS(RationalPoint({2, 4}), DomainError);
    CHECK_THROWS_AS(RationalPoint({0, 1}), DomainError);
    CHECK_THROWS_AS(RationalPoint({-1, 1}), DomainError);
    const Rational x[] = {Rational(3, 2), Rational(-1, 3)};
    CHECK(RationalPoint::from_affine(x).coords() == std::vector<Int>{6, 9, -2});
  }

  TEST_CASE("worked examples") {
    const auto& p1 = load_model("P1");
    const auto& f1 = load_model("BlP2-1");
    const RationalPoint half({2, 3});
    CHECK(archimedean_height(p1, half, p1.rho()) == doctest::Approx(9));
    CHECK(global_height(p1, half, p1.rho()).total == doctest::Approx(9));

    const RationalPoint origin({1, 0, 0});
    CHECK(global_height(f1, origin, f1.rho()).total == doctest::Approx(1));

    const RationalPoint q({2, 1, 3});
    CHECK(archimedean_height(f1, q, f1.rho()) == doctest::Approx(27));
    CHECK(finite_height_part(f1, q, f1.rho()).as_rational() == Rational(1));
    CHECK(global_height(f1, q, f1.rho()).total == doctest::Approx(27));

    const RationalPoint r({3, 2, 6});
    CHECK(finite_height_part(f1, r, f1.rho()).as_rational() == Rational(1, 3));
    CHECK(local_height(f1, r, f1.rho(), 3).as_rational() == Rational(1, 3));
    CHECK(local_height(f1, r, f1.rho(), 5).as_rational() == Rational(1));
    CHECK_THROWS_AS(local_height(f1, r, f1.rho(), 4), DomainError);
  }

  TEST_CASE("finite part is trivial on projective spaces") {
    std::mt19937_64 rng(11);
    const auto& p2 = load_model("P2");
    for (int i = 0; i < 200; ++i) {
      CHECK(finite_height_part(p2, random_point(rng, 2, 1000), p2.rho()).as_rational() == Rational(1));
    }
  }

  TEST_CASE("heights are multiplicative and scale with the class") {
    std::mt19937_64 rng(12);
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      auto mu = m.uniform(Rational(1, 2));
      mu[0] = Rational(2);
      for (int i = 0; i < 200; ++i) {
        const auto x = random_point(rng, m.dim, 500);
        const auto a = global_height(m, x, m.rho());
        const auto b = global_height(m, x, mu);
        const auto ab = global_height(m, x, m.rho() + mu);
        CHECK(ab.finite_part == a.finite_part * b.finite_part);
        CHECK(ab.total == doctest::Approx(a.total * b.total).epsilon(1e-12));
        const Rational t(3, 2);
        const auto scaled = global_height(m, x, m.rho() * t);
        CHECK(scaled.finite_part == a.finite_part.pow(t));
        CHECK(scaled.total == doctest::Approx(std::pow(a.total, 1.5)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("finite parts are invariant under integer translation") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<Int> shift(-50, 50);
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      for (int i = 0; i < 200; ++i) {
        const auto x = random_point(rng, m.dim, 500);
        auto c = x.coords();
        for (int k = 1; k <= m.dim; ++k) c[k] += shift(rng) * c[0];
        CHECK(finite_height_part(m, RationalPoint(c), m.rho()) == finite_height_part(m, x, m.rho()));
      }
    }
  }

  TEST_CASE("product of local heights over p <= 100 gives the finite part") {
    std::mt19937_64 rng(14);
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      for (int i = 0; i < 1000; ++i) {
        // Z <= 100 keeps every relevant prime below 100.
        const auto x = random_point(rng, m.dim, 100);
        PrimePowerProduct prod;
        for (Int p : primes_up_to(100)) prod = prod * local_height(m, x, m.rho(), p);
        CHECK(prod == finite_height_part(m, x, m.rho()));
      }
    }
  }

  TEST_CASE("anticanonical height is at least one") {
    std::mt19937_64 rng(15);
    for (ModelId id : all_model_ids()) {
      const auto& m = load_model(id);
      for (int i = 0; i < 500; ++i) CHECK(global_height(m, random_point(rng, m.dim, 300), m.rho()).total >= 1 - 1e-12);
    }
  }

  TEST_CASE("BlP2-3 height dominates a quarter of the standard height") {
    std::mt19937_64 rng(16);
    const auto& m = load_model("BlP2-3");
    for (int i = 0; i < 5000; ++i) {
      const auto x = random_point(rng, 2, i < 2500 ? 30 : 3000);
      Int hs = 0;
      for (Int v : x.coords()) hs = std::max(hs, std::abs(v));
      CHECK(4 * global_height(m, x, m.rho()).total >= static_cast<double>(hs) * (1 - 1e-12));
    }
  }

  TEST_CASE("prime power products") {
    PrimePowerProduct a, b;
    a.multiply(2, Rational(1, 2));
    b.multiply(2, Rational(1, 2));
    b.multiply(3, Rational(-1));
    const auto ab = a * b;
    CHECK(ab.as_rational() == Rational(2, 3));
    CHECK_FALSE(a.as_rational().has_value());
    CHECK(a.to_double() == doctest::Approx(std::sqrt(2.0)));
  }
}
