// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/catalog.hpp"

#include <algorithm>
#include <sstream>

namespace manin {

namespace {

constexpr std::array<ModelId, 6> kAllModels = {ModelId::P1,     ModelId::P2,     ModelId::P3,
                                              ModelId::BlP2_1, ModelId::BlP2_2, ModelId::BlP2_3};

LinearForm form(std::initializer_list<Int> c) { return LinearForm{std::vector<Int>(c)}; }

VarietyModel projective_space(ModelId id, int n) {
  VarietyModel m;
  m.id = id;
  m.dim = n;
  m.components = {{"D1", n + 1}};
  GeneratorSystem h{"H", {}};
  for (int i = 0; i <= n; ++i) {
    std::vector<Int> c(n + 1, 0);
    c[i] = 1;
    h.sections.push_back(LinearForm{c});
  }
  m.generators = {h};
  m.pic_to_gen = {{1}};
  Polynomial open{std::vector<Int>(n + 1, 0)};
  open.coeffs[n] = 1;
  m.stratum_polys[0] = open;
  m.stratum_polys[1] = Polynomial{std::vector<Int>(n, 1)};  // #P^{n-1}
  m.boundary_sum_generator = 0;
  m.boundary_height_floor = {Rational(1)};
  return m;
}

// Blow-up of P^2 at the first r of (1:0:0), (0:1:0), (1:1:0). Components are
// D1 (strict transform of Z = 0) then E_1..E_r; generators are H then
// F_i = H - E_i, the pencil of lines through the i-th center.
VarietyModel plane_blowup(ModelId id, int r) {
  static const std::array<std::array<Int, 3>, 3> kCenters = {{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}};
  VarietyModel m;
  m.id = id;
  m.dim = 2;
  m.components.push_back({"D1", 3});
  for (int i = 1; i <= r; ++i) m.components.push_back({"E" + std::to_string(i), 2});

  m.generators.push_back({"H", {form({1, 0, 0}), form({0, 1, 0}), form({0, 0, 1})}});
  for (int i = 0; i < r; ++i) {
    const auto& c = kCenters[i];
    m.centers.push_back(c);
    // The line v X - u Y = 0 passes through (u : v : 0), as does Z = 0.
    LinearForm through = form({0, c[1], -c[0]});
    if (std::all_of(through.coeffs.begin(), through.coeffs.end(), [](Int v) { return v <= 0; })) {
      for (auto& v : through.coeffs) v = -v;
    }
    m.generators.push_back({"F" + std::to_string(i + 1), {through, form({1, 0, 0})}});
  }

  const std::size_t gens = r + 1;
  m.pic_to_gen.assign(gens, std::vector<Int>(r + 1, 0));
  m.pic_to_gen[0][0] = 1 - r;  // D1 = H - sum E_i = (1 - r) H + sum F_i
  for (int i = 1; i <= r; ++i) {
    m.pic_to_gen[i][0] = 1;
    m.pic_to_gen[0][i] = 1;  // E_i = H - F_i
    m.pic_to_gen[i][i] = -1;
  }

  m.stratum_polys[0] = Polynomial{{0, 0, 1}};
  m.stratum_polys[1] = Polynomial{{1 - r, 1}};
  for (int i = 1; i <= r; ++i) {
    m.stratum_polys[1u << i] = Polynomial{{0, 1}};
    m.stratum_polys[1u | (1u << i)] = Polynomial{{1}};
  }
  m.boundary_sum_generator = 0;
  // H(x; D1) >= 1 for r <= 2. For r = 3 the F-gcds are pairwise coprime
  // divisors of Z, and at most one of |X|, |Y|, |X - Y| is below
  // max(|X|, |Y|) / 2, so H(x; D1) >= 1/2. H(x; E_i) = q_H / q_{F_i} and the
  // section X - Y is at most 2 q_H, which gives 1/2 for E_3.
  m.boundary_height_floor.assign(r + 1, Rational(1));
  if (r == 3) {
    m.boundary_height_floor[0] = Rational(1, 2);
    m.boundary_height_floor[3] = Rational(1, 2);
  }
  return m;
}

void validate(const VarietyModel& m) {
  for (const auto& c : m.components) {
    if (c.rho < 2) throw CatalogError("catalog entry violates rho >= 2");
  }
  const std::size_t k = m.generators.size();
  if (k != m.components.size() || m.pic_to_gen.size() != k) {
    throw CatalogError("generator basis has the wrong size");
  }
  for (std::size_t j = 0; j < k; ++j) {
    Int row = 0;
    for (std::size_t a = 0; a < k; ++a) row += m.pic_to_gen[j][a];
    if (row != (j == m.boundary_sum_generator ? 1 : 0)) {
      throw CatalogError("boundary components do not sum to the hyperplane class");
    }
  }
  // Integer determinant by fraction-free elimination; must be +-1.
  std::vector<std::vector<__int128>> a(k, std::vector<__int128>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = m.pic_to_gen[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && a[piv][c] == 0) ++piv;
    if (piv == k) throw CatalogError("pic_to_gen is singular");
    if (piv != c) {
      std::swap(a[piv], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j) a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
    }
    prev = a[c][c];
  }
  __int128 det = sign * a[k - 1][k - 1];
  if (det != 1 && det != -1) throw CatalogError("pic_to_gen is not unimodular");
}

std::map<ModelId, VarietyModel> build_catalog() {
  std::map<ModelId, VarietyModel> cat;
  cat.emplace(ModelId::P1, projective_space(ModelId::P1, 1));
  cat.emplace(ModelId::P2, projective_space(ModelId::P2, 2));
  cat.emplace(ModelId::P3, projective_space(ModelId::P3, 3));
  cat.emplace(ModelId::BlP2_1, plane_blowup(ModelId::BlP2_1, 1));
  cat.emplace(ModelId::BlP2_2, plane_blowup(ModelId::BlP2_2, 2));
  cat.emplace(ModelId::BlP2_3, plane_blowup(ModelId::BlP2_3, 3));
  for (auto& [id, m] : cat) {
    m.small_primes = {2, 3};
    validate(m);
  }
  return cat;
}

}  // namespace

std::string_view model_name(ModelId id) {
  switch (id) {
    case ModelId::P1: return "P1";
    case ModelId::P2: return "P2";
    case ModelId::P3: return "P3";
    case ModelId::BlP2_1: return "BlP2-1";
    case ModelId::BlP2_2: return "BlP2-2";
    case ModelId::BlP2_3: return "BlP2-3";
  }
  return "?";
}

ModelId parse_model_id(std::string_view name) {
  for (ModelId id : kAllModels) {
    if (model_name(id) == name) return id;
  }
  throw CatalogError("unknown model '" + std::string(name) + "'");
}

std::span<const ModelId> all_model_ids() { return kAllModels; }

Int LinearForm::eval(std::span<const Int> coords) const {
  Int v = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * coords[i];
  return v;
}

bool LinearForm::is_constant() const {
  return std::all_of(coeffs.begin() + 1, coeffs.end(), [](Int c) { return c == 0; });
}

Int Polynomial::eval(Int p) const {
  Int v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * p + *it;
  return v;
}

int Polynomial::degree() const {
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
    if (coeffs[d] != 0) return d;
  }
  return -1;
}

bool PicardVector::is_interior_effective() const {
  return !coeffs_.empty() &&
         std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) > 0; });
}

std::vector<double> PicardVector::to_real() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_double(c));
  return out;
}

PicardVector PicardVector::operator+(const PicardVector& other) const {
  if (other.size() != size()) throw DomainError("Picard vectors of different rank");
  PicardVector out = *this;
  for (std::size_t i = 0; i < size(); ++i) out.coeffs_[i] += other.coeffs_[i];
  return out;
}

PicardVector PicardVector::operator*(const Rational& t) const {
  PicardVector out = *this;
  for (auto& c : out.coeffs_) c *= t;
  return out;
}

PicardVector PicardVector::parse(std::string_view text) {
  std::vector<Rational> coeffs;
  while (true) {
    auto comma = text.find(',');
    coeffs.push_back(parse_rational(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return PicardVector(std::move(coeffs));
}

std::string PicardVector::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << to_string(coeffs_[i]);
  return os.str();
}

PicardVector VarietyModel::rho() const {
  std::vector<Rational> c;
  for (const auto& comp : components) c.emplace_back(comp.rho);
  return PicardVector(std::move(c));
}

PicardVector VarietyModel::uniform(const Rational& value) const {
  return PicardVector(std::vector<Rational>(components.size(), value));
}

std::vector<Rational> VarietyModel::generator_exponents(const PicardVector& lambda) const {
  if (lambda.size() != rank()) throw DomainError("Picard vector has the wrong rank for " + std::string(name()));
  std::vector<Rational> m(generators.size(), Rational(0));
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t a = 0; a < rank(); ++a) m[j] += pic_to_gen[j][a] * lambda[a];
  return m;
}

std::vector<double> VarietyModel::generator_exponents_real(std::span<const double> s) const {
  if (s.size() != rank()) throw DomainError("Picard vector has the wrong rank for " + std::string(name()));
  std::vector<double> m(generators.size(), 0.0);
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t a = 0; a < rank(); ++a) m[j] += static_cast<double>(pic_to_gen[j][a]) * s[a];
  return m;
}

bool VarietyModel::is_small_prime(Int p) const {
  return std::find(small_primes.begin(), small_primes.end(), p) != small_primes.end();
}

bool VarietyModel::last_coordinate_separable() const {
  const std::size_t last = static_cast<std::size_t>(dim);
  for (const auto& g : generators) {
    for (const auto& s : g.sections) {
      if (s.coeffs[last] == 0) continue;
      for (std::size_t i = 0; i < last; ++i) {
        if (s.coeffs[i] != 0) return false;
      }
    }
  }
  return true;
}

Polynomial VarietyModel::total_points() const {
  Polynomial total;
  for (const auto& [mask, poly] : stratum_polys) {
    if (total.coeffs.size() < poly.coeffs.size()) total.coeffs.resize(poly.coeffs.size(), 0);
    for (std::size_t i = 0; i < poly.coeffs.size(); ++i) total.coeffs[i] += poly.coeffs[i];
  }
  return total;
}

const VarietyModel& load_model(ModelId id) {
  static const std::map<ModelId, VarietyModel> catalog = build_catalog();
  return catalog.at(id);
}

const VarietyModel& load_model(std::string_view name) { return load_model(parse_model_id(name)); }

}  // namespace manin
