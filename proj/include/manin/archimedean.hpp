// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "manin/catalog.hpp"
#include "manin/padic.hpp"

namespace manin {

/// Integral of max(1, |x|_inf)^{-sigma} over R^n, sigma > n.
double projective_density(int n, double sigma);

/// Integral of H_inf(x; s)^{-1} over R^n: closed form on projective spaces,
/// nested adaptive quadrature split along the kinks of the max-metric for
/// the plane blow-ups.
LocalFactor archimedean_integral(const VarietyModel& model, std::span<const double> s);

/// Integral of x^{-sigma} cos(omega x) over [1, inf): Gauss-Kronrod panels
/// up to a cut, then the integration-by-parts expansion with its remainder.
struct OscillatoryTail {
  double value;
  double error_bound;
};
OscillatoryTail cosine_tail(double sigma, double omega);

/// Fourier transform of H_inf(x; s)^{-1} against exp(-2 pi i <a, x>). The
/// nonzero frequencies are available for P1 only.
LocalFactor arch_fourier(const VarietyModel& model, std::span<const Rational> a, std::span<const double> s);

}  // namespace manin
