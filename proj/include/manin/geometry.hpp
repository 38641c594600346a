// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "manin/catalog.hpp"

namespace manin {

/// max_alpha rho_alpha / lambda_alpha.
Rational a_exponent(const VarietyModel& model, const PicardVector& lambda);

/// Components attaining the maximum in a_exponent.
ComponentMask b_set(const VarietyModel& model, const PicardVector& lambda);
int b_exponent(const VarietyModel& model, const PicardVector& lambda);

/// Product of 1/lambda_alpha over b_set.
Rational c_coeff(const VarietyModel& model, const PicardVector& lambda);

struct DivisorData {
  std::vector<int> d;  // polar multiplicity along each D_alpha
  ComponentMask a0 = 0;
  ComponentMask a1 = 0;
};

/// Polar multiplicities of the linear form f_a = sum a_i x_i.
DivisorData divisor_multiplicities(const VarietyModel& model, std::span<const Int> a);

/// #D_A°(F_p) from the stored polynomials; refuses small primes.
Int stratum_count(const VarietyModel& model, ComponentMask A, Int p);

/// Same count obtained by walking P^n(F_p) and replacing each blown-up center
/// by its exceptional line. Test oracle.
Int brute_stratum_count(const VarietyModel& model, ComponentMask A, Int p);

inline int popcount(ComponentMask m) { return __builtin_popcount(m); }

}  // namespace manin
