// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "manin/catalog.hpp"

namespace manin {

using Complex = std::complex<double>;

enum class Provenance { ClosedForm, BruteForce, Quadrature };
std::string_view provenance_name(Provenance p);

/// Value of a local factor at one place (place 0 is the real place).
struct LocalFactor {
  Int place = 0;
  Complex value;
  Provenance provenance = Provenance::ClosedForm;
  double error_bound = 0.0;
  int depth = 0;  // brute force only
};

/// exp(2 pi i frac_p(x)).
Complex character_value(Int p, const Rational& x);

enum class SumMethod { Auto, Direct, Lifted };

/// Integral of psi(u p^{-n d} t^d) over the p-adic units, Haar measure with
/// vol(Z_p) = 1. Lifted evaluation splits t = t0 + p^c w, c = ceil(nd / 2),
/// and sums the linear phase in w by orthogonality.
Complex character_sum(Int p, Int u, int n, int d, SumMethod method = SumMethod::Auto);

/// 1 + s_alpha - rho_alpha for every component.
std::vector<double> pole_exponents(const VarietyModel& model, std::span<const double> s);

/// Integral of H_p(x; s)^{-1} over the complement of p^{-m} Z_p^n, summed
/// shell by shell; `remainder` receives the extrapolated truncation.
double shell_tail(const VarietyModel& model, Int p, std::span<const double> s, int m, double& remainder);

/// Fourier transform of H_p(x; s)^{-1} against psi_p(<a, x>), summed over
/// residue cells of p^{-m} Z_p^n at resolution p^{-scale}. Negative scale
/// picks the smallest resolution on which the character is constant.
LocalFactor brute_padic_fourier(const VarietyModel& model, Int p, std::span<const Rational> a,
                                std::span<const double> s, int depth, int scale = -1);

/// Number of residue cells brute_padic_fourier visits.
double brute_cell_count(const VarietyModel& model, Int p, std::span<const Rational> a, int depth, int scale = -1);

/// Largest depth whose cell count stays within the budget (at least 1).
int depth_for_budget(const VarietyModel& model, Int p, std::span<const Rational> a, double cell_budget);

}  // namespace manin
