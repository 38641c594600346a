// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/geometry.hpp"

#include <algorithm>
#include <functional>

namespace manin {

namespace {

void require_interior(const VarietyModel& model, const PicardVector& lambda) {
  if (lambda.size() != model.rank()) {
    throw DomainError("Picard vector has rank " + std::to_string(lambda.size()) + ", model " +
                      std::string(model.name()) + " needs " + std::to_string(model.rank()));
  }
  if (!lambda.is_interior_effective()) throw DomainError("lambda must have positive coefficients");
}

Int mod(Int a, Int p) { return ((a % p) + p) % p; }

// Calls visit(coords) once for every point of P^k(F_p), first nonzero
// coordinate normalized to 1.
void for_each_projective_point(int k, Int p, const std::function<void(const std::vector<Int>&)>& visit) {
  std::vector<Int> c(k + 1);
  for (int lead = 0; lead <= k; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    const int free = k - lead;
    Int total = ipow(p, free);
    for (Int idx = 0; idx < total; ++idx) {
      Int t = idx;
      for (int j = lead + 1; j <= k; ++j) {
        c[j] = t % p;
        t /= p;
      }
      visit(c);
    }
  }
}

}  // namespace

Rational a_exponent(const VarietyModel& model, const PicardVector& lambda) {
  require_interior(model, lambda);
  Rational best(0);
  for (std::size_t a = 0; a < model.rank(); ++a) best = std::max(best, Rational(model.components[a].rho) / lambda[a]);
  return best;
}

ComponentMask b_set(const VarietyModel& model, const PicardVector& lambda) {
  const Rational a = a_exponent(model, lambda);
  ComponentMask mask = 0;
  for (std::size_t i = 0; i < model.rank(); ++i) {
    if (Rational(model.components[i].rho) == a * lambda[i]) mask |= 1u << i;
  }
  return mask;
}

int b_exponent(const VarietyModel& model, const PicardVector& lambda) { return popcount(b_set(model, lambda)); }

Rational c_coeff(const VarietyModel& model, const PicardVector& lambda) {
  const ComponentMask b = b_set(model, lambda);
  Rational c(1);
  for (std::size_t i = 0; i < model.rank(); ++i) {
    if (b >> i & 1) c /= lambda[i];
  }
  return c;
}

DivisorData divisor_multiplicities(const VarietyModel& model, std::span<const Int> a) {
  if (a.size() != static_cast<std::size_t>(model.dim)) throw DomainError("character index has the wrong length");
  if (std::all_of(a.begin(), a.end(), [](Int v) { return v == 0; })) {
    throw DomainError("divisor of the zero form is undefined");
  }
  DivisorData out;
  out.d.assign(model.rank(), 1);
  // The strict transform of {a . x = 0} contains E_i exactly when the line
  // passes through the i-th center, which removes E_i from the polar part.
  for (std::size_t i = 0; i < model.centers.size(); ++i) {
    const auto& c = model.centers[i];
    if (a[0] * c[0] + a[1] * c[1] == 0) out.d[i + 1] = 0;
  }
  for (std::size_t i = 0; i < out.d.size(); ++i) {
    if (out.d[i] == 0) out.a0 |= 1u << i;
    if (out.d[i] == 1) out.a1 |= 1u << i;
  }
  return out;
}

Int stratum_count(const VarietyModel& model, ComponentMask A, Int p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (model.is_small_prime(p)) {
    throw DomainError("stratum polynomials are not used at p = " + std::to_string(p));
  }
  auto it = model.stratum_polys.find(A);
  return it == model.stratum_polys.end() ? 0 : it->second.eval(p);
}

Int brute_stratum_count(const VarietyModel& model, ComponentMask A, Int p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  Int count = 0;
  auto tally = [&](ComponentMask m, Int n) {
    if (m == A) count += n;
  };
  if (model.centers.empty()) {
    for_each_projective_point(model.dim, p, [&](const std::vector<Int>& c) { tally(c[0] == 0 ? 1u : 0u, 1); });
    return count;
  }
  // Coordinates (Z, X, Y).
  for_each_projective_point(2, p, [&](const std::vector<Int>& c) {
    if (c[0] != 0) {
      tally(0, 1);
      return;
    }
    int hit = -1;
    for (std::size_t i = 0; i < model.centers.size(); ++i) {
      const auto& ctr = model.centers[i];
      if (mod(c[1] * ctr[1] - c[2] * ctr[0], p) == 0) {
        if (hit >= 0) throw CatalogError("blown-up centers collide modulo " + std::to_string(p));
        hit = static_cast<int>(i);
      }
    }
    if (hit < 0) {
      tally(1u, 1);
      return;
    }
    // Exceptional line: normal directions (dZ : dT) at the center. The
    // direction with dZ = 0 is the tangent of the line at infinity.
    const ComponentMask e = 1u << (hit + 1);
    for_each_projective_point(1, p, [&](const std::vector<Int>& dir) { tally(dir[0] == 0 ? (e | 1u) : e, 1); });
  });
  return count;
}

}  // namespace manin
