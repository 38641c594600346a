// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "manin/catalog.hpp"
#include "manin/enumeration.hpp"
#include "manin/geometry.hpp"
#include "manin/padic.hpp"

namespace manin {

/// #(D_alpha° ∩ E(f_a))(F_p), E(f_a) the closure of {f_a = 0}.
Int boundary_incidence(const VarietyModel& model, std::span<const Int> a, std::size_t alpha, Int p);

/// The closed form applies: p is not small and a is nonzero mod p.
bool is_good_prime(const VarietyModel& model, std::span<const Int> a, Int p);

/// Primes dividing every entry of a, apart from the small ones.
std::vector<Int> bad_primes(const VarietyModel& model, std::span<const Int> a);

/// Polar multiplicities of f_a on the reduction mod p: E_i has d = 0 once
/// the line f_a = 0 passes through the i-th center modulo p.
DivisorData reduced_divisor(const VarietyModel& model, std::span<const Int> a, Int p);

struct GoodPrimeValue {
  double main;
  double et_bound;
  DivisorData divisor;
};

/// Good-prime value of H_p(psi_a; s) for nonzero integral a: open orbit,
/// divisor contributions with #D_alpha° minus its points on E(f_a), and a
/// bound on the strata with |A| >= 2 plus the points on E(f_a).
GoodPrimeValue closed_form_good_prime(const VarietyModel& model, Int p, std::span<const Int> a,
                                      std::span<const double> s);

/// Brute-force factors keyed by (p, a mod p^depth).
using BruteCache = std::map<std::tuple<Int, std::vector<Int>>, LocalFactor>;

struct FourierOptions {
  Int p_max = 1000;
  double brute_tolerance = 1e-13;
  double brute_budget = 2e6;
  BruteCache* cache = nullptr;
};

/// H_p(psi_a; s) at any prime: Denef or closed form where available,
/// brute force otherwise.
LocalFactor local_fourier(const VarietyModel& model, Int p, std::span<const Int> a, std::span<const double> s,
                          const FourierOptions& opts = {});

struct FiniteFourier {
  double value;
  double bound;
  ComponentMask accelerated;     // alpha whose zeta(1 + s_alpha - rho_alpha) was peeled
  std::vector<Int> brute_primes;  // places evaluated by brute force
  double tail_bound;              // relative, primes above p_max
};

/// prod_p H_p(psi_a; s), zeta-accelerated along A_0(a).
FiniteFourier finite_fourier(const VarietyModel& model, std::span<const Int> a, std::span<const double> s,
                             const FourierOptions& opts = {});

struct GlobalFourier {
  double value;
  double bound;
  FiniteFourier finite;
  LocalFactor arch;
};

/// H(psi_a; s) = H_inf(psi_a; s) prod_p H_p(psi_a; s), a integral.
GlobalFourier global_fourier(const VarietyModel& model, std::span<const Int> a, std::span<const double> s,
                             const FourierOptions& opts = {});

struct ZetaTruncated {
  double partial;
  double tail_estimate;
  double tail_bound;  // |true tail - tail_estimate| <= tail_bound
  Int points;
};

/// sum over H(x; lambda) <= B_cut of H(x; lambda)^{-s}, with a tail from the
/// count at B_cut and a rigorous envelope from the search region.
ZetaTruncated zeta_truncated(const VarietyModel& model, const PicardVector& lambda, double s, const Rational& B_cut,
                             const CountOptions& count_opts = {});

struct PoissonReport {
  double lhs;
  double lhs_bound;
  double rhs;
  double rhs_bound;
  double a_tail_bound;
  double diff;
  double combined_bound;
  double relative;
  Int a_cut;
};

/// Z(s) against sum_{|a| <= a_cut} H(psi_a; s lambda).
PoissonReport poisson_check(const VarietyModel& model, const PicardVector& lambda, double s, const Rational& B_cut,
                            Int a_cut, Int p_max, const CountOptions& count_opts = {});

}  // namespace manin
