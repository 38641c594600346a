// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "manin/arith.hpp"

namespace manin {

enum class ModelId { P1, P2, P3, BlP2_1, BlP2_2, BlP2_3 };

std::string_view model_name(ModelId id);
ModelId parse_model_id(std::string_view name);
std::span<const ModelId> all_model_ids();

/// Integer linear form in homogeneous coordinates (Z, X_1, ..., X_n).
struct LinearForm {
  std::vector<Int> coeffs;

  Int eval(std::span<const Int> coords) const;
  bool is_constant() const;  // only the Z coefficient is nonzero
};

/// Sections of a globally generated class; the max of their absolute values
/// defines the metric at every place.
struct GeneratorSystem {
  std::string name;
  std::vector<LinearForm> sections;
};

struct BoundaryComponent {
  std::string name;
  int rho;  // anticanonical multiplicity
};

/// Integer polynomial in p, lowest degree first.
struct Polynomial {
  std::vector<Int> coeffs;
  Int eval(Int p) const;
  int degree() const;
};

using ComponentMask = unsigned;

/// Coefficients over the boundary-component basis of Pic(X).
class PicardVector {
 public:
  PicardVector() = default;
  explicit PicardVector(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_interior_effective() const;
  std::vector<double> to_real() const;

  PicardVector operator+(const PicardVector& other) const;
  PicardVector operator*(const Rational& t) const;
  bool operator==(const PicardVector&) const = default;

  /// Comma separated, e.g. "3,2" or "1/2,1".
  static PicardVector parse(std::string_view text);
  std::string str() const;

 private:
  std::vector<Rational> coeffs_;
};

struct VarietyModel {
  ModelId id;
  int dim;
  std::vector<BoundaryComponent> components;
  std::vector<GeneratorSystem> generators;
  // pic_to_gen[j][alpha]: coefficient of generator j in the class D_alpha.
  std::vector<std::vector<Int>> pic_to_gen;
  // Blown-up points (X : Y : Z) on the line Z = 0.
  std::vector<std::array<Int, 3>> centers;
  // #D_A°(F_p) for every subset A; the empty mask is the open orbit.
  std::map<ComponentMask, Polynomial> stratum_polys;
  std::vector<Int> small_primes;
  // Index of the generator system whose class is the sum of all D_alpha.
  std::size_t boundary_sum_generator;
  // Lower bounds for H(x; D_alpha) over rational points of the open orbit.
  std::vector<Rational> boundary_height_floor;

  std::string_view name() const { return model_name(id); }
  std::size_t rank() const { return components.size(); }
  PicardVector rho() const;
  PicardVector uniform(const Rational& value) const;

  /// Exponents m_j with lambda = sum_j m_j G_j.
  std::vector<Rational> generator_exponents(const PicardVector& lambda) const;
  std::vector<double> generator_exponents_real(std::span<const double> s) const;

  bool is_small_prime(Int p) const;
  /// True when the last coordinate only ever appears as a bare section.
  bool last_coordinate_separable() const;
  /// Total #X(F_p) as a polynomial.
  Polynomial total_points() const;
};

const VarietyModel& load_model(ModelId id);
const VarietyModel& load_model(std::string_view name);

}  // namespace manin
