// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "manin/catalog.hpp"

namespace manin {

struct CountOptions {
  unsigned threads = 1;
  // Refuse searches whose candidate count exceeds this.
  double candidate_budget = 5e11;
};

/// Bound on the standard height max|coords| over points with H(x; lambda) <= B.
Int search_radius(const VarietyModel& model, const PicardVector& lambda, const Rational& B);
/// The real bound behind search_radius: q_H <= r(B) on the region.
double search_radius_real(const VarietyModel& model, const PicardVector& lambda, double B);

/// Exact number of affine rational points with H(x; lambda) <= B.
Int count_points(const VarietyModel& model, const PicardVector& lambda, const Rational& B,
                 const CountOptions& opts = {});

/// Visits every point with H(x; lambda) <= B in a fixed order, passing the
/// homogeneous coordinates and the generator heights q_j.
using PointVisitor = std::function<void(std::span<const Int> coords, std::span<const Int> q)>;
void for_each_point(const VarietyModel& model, const PicardVector& lambda, const Rational& B,
                    const PointVisitor& visit, const CountOptions& opts = {});

struct LadderRung {
  Rational bound;
  Int count;
  double elapsed_ms;
};

struct FitResult {
  std::vector<double> coeffs;  // ascending powers of log B
  double residual;
  double leading() const { return coeffs.empty() ? 0.0 : coeffs.back(); }
};

struct ExponentEstimate {
  double a_hat;
  double b_hat;
};

struct CountLadder {
  ModelId model;
  PicardVector lambda;
  std::vector<LadderRung> rungs;
};

/// Geometric ladder of `rungs` bounds ending at `top`, one per decade step
/// of 10^(1/per_decade).
std::vector<Rational> geometric_bounds(double bottom, double top, int per_decade);

CountLadder count_ladder(const VarietyModel& model, const PicardVector& lambda, const std::vector<Rational>& bounds,
                         const CountOptions& opts = {});

/// Least squares of N/B^a on 1, log B, ..., (log B)^(b-1).
FitResult fit_leading(const CountLadder& ladder, double a, int b);

/// Regression log N = c + a log B + beta log log B; b_hat = 1 + beta.
ExponentEstimate estimate_exponents(const CountLadder& ladder);

}  // namespace manin
