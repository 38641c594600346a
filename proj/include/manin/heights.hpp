// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "manin/catalog.hpp"

namespace manin {

/// Primitive homogeneous coordinates (Z, X_1, ..., X_n) with Z >= 1.
class RationalPoint {
 public:
  RationalPoint() = default;
  /// Validates primitivity and Z >= 1.
  explicit RationalPoint(std::vector<Int> coords);
  /// The affine point (x_1, ..., x_n), written over a common denominator.
  static RationalPoint from_affine(std::span<const Rational> x);

  const std::vector<Int>& coords() const { return c_; }
  Int z() const { return c_[0]; }
  std::size_t dim() const { return c_.size() - 1; }
  Rational affine(std::size_t i) const { return Rational(c_[i + 1], c_[0]); }
  std::string str() const;

 private:
  std::vector<Int> c_;
};

/// prod_p p^{e_p} with rational exponents; exact.
class PrimePowerProduct {
 public:
  void multiply(Int p, const Rational& e);
  PrimePowerProduct operator*(const PrimePowerProduct& o) const;
  PrimePowerProduct pow(const Rational& t) const;
  bool operator==(const PrimePowerProduct& o) const { return exps_ == o.exps_; }

  const std::map<Int, Rational>& exponents() const { return exps_; }
  double to_double() const;
  double log() const;
  /// Value as a rational when every exponent is an integer.
  std::optional<Rational> as_rational() const;
  std::string str() const;

 private:
  std::map<Int, Rational> exps_;
};

struct HeightValue {
  PrimePowerProduct finite_part;
  double arch_part;
  double total;
};

/// max |l(x)| over the sections of each generator system.
std::vector<Int> section_maxima(const VarietyModel& model, const RationalPoint& x);
/// gcd of the section values of each generator system.
std::vector<Int> section_gcds(const VarietyModel& model, const RationalPoint& x);
/// Integral projective heights q_j = max / gcd, so H(x; lambda) = prod q_j^{m_j}.
std::vector<Int> generator_heights(const VarietyModel& model, const RationalPoint& x);

double archimedean_height(const VarietyModel& model, const RationalPoint& x, std::span<const double> lambda);
double archimedean_height(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda);
PrimePowerProduct finite_height_part(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda);
PrimePowerProduct local_height(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda, Int p);
HeightValue global_height(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda);

/// Exact test of prod_j q_j^{m_j} <= B for rational m_j and B. Floating
/// point decides clear cases; ties go to big-integer arithmetic.
class HeightBound {
 public:
  HeightBound(std::vector<Rational> exponents, Rational bound);

  bool admits(std::span<const Int> q) const;
  const std::vector<Rational>& exponents() const { return m_; }
  const Rational& bound() const { return bound_; }

 private:
  std::vector<Rational> m_;
  std::vector<double> md_;
  std::vector<Int> scaled_;  // m_j times the common denominator
  Int denom_;
  Rational bound_;
  double log_bound_;
};

}  // namespace manin
