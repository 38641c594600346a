// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/heights.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace manin {

namespace {

void factor_into(Int n, const Rational& e, PrimePowerProduct& out) {
  n = std::abs(n);
  for (Int p = 2; p * p <= n; ++p) {
    int v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    if (v) out.multiply(p, e * v);
  }
  if (n > 1) out.multiply(n, e);
}

void check_model(const VarietyModel& model, const RationalPoint& x) {
  if (x.coords().size() != static_cast<std::size_t>(model.dim) + 1) {
    throw DomainError("point " + x.str() + " has the wrong dimension for " + std::string(model.name()));
  }
}

}  // namespace

RationalPoint::RationalPoint(std::vector<Int> coords) : c_(std::move(coords)) {
  if (c_.size() < 2) throw DomainError("a point needs at least two homogeneous coordinates");
  if (c_[0] < 1) throw DomainError("homogeneous coordinate Z must be positive");
  Int g = 0;
  for (Int v : c_) g = std::gcd(g, v);
  if (g != 1) throw DomainError("coordinates " + str() + " are not primitive");
}

RationalPoint RationalPoint::from_affine(std::span<const Rational> x) {
  Int z = 1;
  for (const auto& r : x) z = std::lcm(z, r.denominator());
  std::vector<Int> c{z};
  for (const auto& r : x) c.push_back(r.numerator() * (z / r.denominator()));
  return RationalPoint(std::move(c));
}

std::string RationalPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i == 0 ? "" : i == 1 ? ";" : ",") << c_[i];
  os << ")";
  return os.str();
}

void PrimePowerProduct::multiply(Int p, const Rational& e) {
  if (sgn(e) == 0) return;
  auto& slot = exps_[p];
  slot += e;
  if (sgn(slot) == 0) exps_.erase(p);
}

PrimePowerProduct PrimePowerProduct::operator*(const PrimePowerProduct& o) const {
  PrimePowerProduct out = *this;
  for (const auto& [p, e] : o.exps_) out.multiply(p, e);
  return out;
}

PrimePowerProduct PrimePowerProduct::pow(const Rational& t) const {
  PrimePowerProduct out;
  for (const auto& [p, e] : exps_) out.multiply(p, e * t);
  return out;
}

double PrimePowerProduct::log() const {
  double s = 0;
  for (const auto& [p, e] : exps_) s += manin::to_double(e) * std::log(static_cast<double>(p));
  return s;
}

double PrimePowerProduct::to_double() const { return std::exp(log()); }

std::optional<Rational> PrimePowerProduct::as_rational() const {
  Rational r(1);
  for (const auto& [p, e] : exps_) {
    if (e.denominator() != 1) return std::nullopt;
    Int k = std::abs(e.numerator());
    Int v = ipow(p, static_cast<int>(k));
    r *= sgn(e) > 0 ? Rational(v) : Rational(1, v);
  }
  return r;
}

std::string PrimePowerProduct::str() const {
  if (auto r = as_rational()) return to_string(*r);
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exps_) {
    os << (first ? "" : "*") << p << "^(" << to_string(e) << ")";
    first = false;
  }
  return os.str();
}

std::vector<Int> section_maxima(const VarietyModel& model, const RationalPoint& x) {
  check_model(model, x);
  std::vector<Int> out;
  for (const auto& g : model.generators) {
    Int m = 0;
    for (const auto& s : g.sections) m = std::max(m, std::abs(s.eval(x.coords())));
    out.push_back(m);
  }
  return out;
}

std::vector<Int> section_gcds(const VarietyModel& model, const RationalPoint& x) {
  check_model(model, x);
  std::vector<Int> out;
  for (const auto& g : model.generators) {
    Int d = 0;
    for (const auto& s : g.sections) d = std::gcd(d, s.eval(x.coords()));
    out.push_back(d);
  }
  return out;
}

std::vector<Int> generator_heights(const VarietyModel& model, const RationalPoint& x) {
  auto q = section_maxima(model, x);
  auto g = section_gcds(model, x);
  for (std::size_t j = 0; j < q.size(); ++j) q[j] /= g[j];
  return q;
}

double archimedean_height(const VarietyModel& model, const RationalPoint& x, std::span<const double> lambda) {
  const auto m = model.generator_exponents_real(lambda);
  const auto maxima = section_maxima(model, x);
  double log_h = 0;
  for (std::size_t j = 0; j < m.size(); ++j) log_h += m[j] * std::log(static_cast<double>(maxima[j]));
  return std::exp(log_h);
}

double archimedean_height(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda) {
  const auto real = lambda.to_real();
  return archimedean_height(model, x, std::span<const double>(real));
}

PrimePowerProduct finite_height_part(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda) {
  const auto m = model.generator_exponents(lambda);
  const auto g = section_gcds(model, x);
  PrimePowerProduct out;
  for (std::size_t j = 0; j < m.size(); ++j) factor_into(g[j], -m[j], out);
  return out;
}

PrimePowerProduct local_height(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda, Int p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  check_model(model, x);
  const auto m = model.generator_exponents(lambda);
  PrimePowerProduct out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    int v = std::numeric_limits<int>::max();
    for (const auto& s : model.generators[j].sections) {
      Int val = s.eval(x.coords());
      if (val != 0) v = std::min(v, valuation(val, p));
    }
    out.multiply(p, -m[j] * v);
  }
  return out;
}

HeightValue global_height(const VarietyModel& model, const RationalPoint& x, const PicardVector& lambda) {
  HeightValue h{finite_height_part(model, x, lambda), archimedean_height(model, x, lambda), 0.0};
  h.total = h.finite_part.to_double() * h.arch_part;
  return h;
}

HeightBound::HeightBound(std::vector<Rational> exponents, Rational bound)
    : m_(std::move(exponents)), denom_(1), bound_(bound) {
  for (const auto& e : m_) {
    denom_ = std::lcm(denom_, e.denominator());
    md_.push_back(to_double(e));
  }
  for (const auto& e : m_) scaled_.push_back(e.numerator() * (denom_ / e.denominator()));
  log_bound_ = sgn(bound_) > 0 ? std::log(to_double(bound_)) : -INFINITY;
}

bool HeightBound::admits(std::span<const Int> q) const {
  if (sgn(bound_) <= 0) return false;
  double log_h = 0;
  for (std::size_t j = 0; j < md_.size(); ++j) {
    if (md_[j] != 0) log_h += md_[j] * std::log(static_cast<double>(q[j]));
  }
  const double tol = 1e-9 * (1.0 + std::abs(log_bound_));
  if (log_h < log_bound_ - tol) return true;
  if (log_h > log_bound_ + tol) return false;
  // prod q^{n_j} * den^D <= num^D * prod q^{-n_j}
  using boost::multiprecision::cpp_int;
  cpp_int lhs = boost::multiprecision::pow(cpp_int(bound_.denominator()), static_cast<unsigned>(denom_));
  cpp_int rhs = boost::multiprecision::pow(cpp_int(bound_.numerator()), static_cast<unsigned>(denom_));
  for (std::size_t j = 0; j < scaled_.size(); ++j) {
    if (scaled_[j] > 0) lhs *= boost::multiprecision::pow(cpp_int(q[j]), static_cast<unsigned>(scaled_[j]));
    if (scaled_[j] < 0) rhs *= boost::multiprecision::pow(cpp_int(q[j]), static_cast<unsigned>(-scaled_[j]));
  }
  return lhs <= rhs;
}

}  // namespace manin
