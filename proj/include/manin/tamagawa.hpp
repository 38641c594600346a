// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "manin/catalog.hpp"
#include "manin/padic.hpp"

namespace manin {

double zeta(double s);

/// p^{-n} sum_A #D_A°(F_p) prod_{alpha in A} (p - 1) / (p^{mu_alpha} - 1).
double denef_local_factor(const VarietyModel& model, Int p, std::span<const double> s);

/// #X(F_p) / p^n for good p.
Rational local_density(const VarietyModel& model, Int p);
/// Local density at any prime: exact at good primes, brute force at 2 and 3.
LocalFactor local_density_factor(const VarietyModel& model, Int p);

/// Integral of H_inf(x; rho)^{-1} over real affine space.
LocalFactor archimedean_density(const VarietyModel& model);

/// |H_p(psi_0; s) prod_alpha (1 - p^{-mu_alpha}) - 1|.
double regularization_residual(const VarietyModel& model, Int p, std::span<const double> s);

/// prod_k (1 - x^k)^{b_k} = f(x) for a power series with f(0) = 1.
std::vector<double> cyclotomic_exponents(const std::vector<double>& f, int kmax);

struct EulerProductResult {
  Int p_max;
  double partial;         // prod_{p <= p_max} density * (1 - 1/p)^rank
  double partial_tail;    // bound on |partial / complete - 1| from the factor shape
  double complete;        // partial times the zeta-peeled tail
  double complete_bound;  // absolute
  std::vector<std::pair<int, double>> peeled;  // (k, b_k) with factor zeta(k)^{-b_k}
  double small_prime_error;                     // relative, from the brute-force densities
};

struct TamagawaResult {
  LocalFactor arch;
  EulerProductResult euler;
  double tamagawa;
  double bound;
};

/// Regularized product of local densities over all primes.
EulerProductResult euler_product(const VarietyModel& model, Int p_max);
TamagawaResult tamagawa_number(const VarietyModel& model, Int p_max);

struct PredictedConstant {
  TamagawaResult tamagawa;
  double value;
  double bound;
};

/// tau / (rank - 1)! / prod rho_alpha.
PredictedConstant predicted_constant(const VarietyModel& model, Int p_max = 1000);

}  // namespace manin
