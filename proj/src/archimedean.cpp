// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace manin {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-12;

struct Affine {
  double alpha, beta;  // y = alpha + beta x
};

// Long segments are graded dyadically toward both ends; every kink sits at
// unit scale from some breakpoint.
template <class F>
double segment(const F& f, double a, double b, double* err) {
  std::vector<double> pts{a};
  const double half = (b - a) / 2;
  for (double h = 1; h < half; h *= 2) pts.push_back(a + h);
  pts.push_back(a + half);
  std::vector<double> right;
  for (double h = 1; h < half; h *= 2) right.push_back(b - h);
  pts.insert(pts.end(), right.rbegin(), right.rend());
  pts.push_back(b);
  double total = 0, e_sum = 0, e = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    total += gauss_kronrod<double, 31>::integrate(f, pts[k], pts[k + 1], 10, kTol, &e);
    e_sum += e;
  }
  *err = e_sum;
  return total;
}

void sorted_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) <= 1e-14 * (1 + std::abs(a)); }),
          v.end());
}

// H_inf(1, x, y; s)^{-1} for a plane model.
class PlaneIntegrand {
 public:
  PlaneIntegrand(const VarietyModel& model, std::span<const double> s)
      : model_(model), m_(model.generator_exponents_real(s)) {
    for (const auto& g : model.generators) {
      const auto& secs = g.sections;
      for (std::size_t a = 0; a < secs.size(); ++a) {
        add_line(secs[a].coeffs, {0, 0, 0}, 1);
        for (std::size_t b = a + 1; b < secs.size(); ++b) {
          add_line(secs[a].coeffs, secs[b].coeffs, 1);
          add_line(secs[a].coeffs, secs[b].coeffs, -1);
        }
      }
    }
  }

  double operator()(double x, double y) const {
    double log_h = 0;
    for (std::size_t j = 0; j < model_.generators.size(); ++j) {
      double mx = 0;
      for (const auto& sec : model_.generators[j].sections) {
        const auto& c = sec.coeffs;
        mx = std::max(mx, std::abs(c[0] + c[1] * x + c[2] * y));
      }
      log_h += m_[j] * std::log(mx);
    }
    return std::exp(-log_h);
  }

  double inner(double x, double* err) const {
    std::vector<double> ys;
    for (const auto& l : lines_) ys.push_back(l.alpha + l.beta * x);
    sorted_unique(ys);
    auto f = [&](double y) { return (*this)(x, y); };
    double total = 0, e = 0, piece_err = 0;
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
      total += segment(f, ys[k], ys[k + 1], &piece_err);
      e += piece_err;
    }
    exp_sinh<double> tail;
    total += tail.integrate(f, ys.back(), kInf, kTol, &piece_err);
    e += piece_err;
    total += tail.integrate([&](double y) { return f(-y); }, -ys.front(), kInf, kTol, &piece_err);
    e += piece_err;
    if (err) *err = e;
    return total;
  }

  std::vector<double> outer_breakpoints() const {
    std::vector<double> xs{0.0};
    for (double v : verticals_) {
      if (v > 0) xs.push_back(v);
    }
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      for (std::size_t j = i + 1; j < lines_.size(); ++j) {
        const double db = lines_[i].beta - lines_[j].beta;
        if (std::abs(db) < 1e-15) continue;
        const double x = (lines_[j].alpha - lines_[i].alpha) / db;
        if (x > 0) xs.push_back(x);
      }
    }
    sorted_unique(xs);
    return xs;
  }

 private:
  // Locus sign * |l_b| = |l_a| as y = alpha + beta x, when it is a graph.
  void add_line(const std::vector<Int>& la, const std::vector<Int>& lb, int sign) {
    const double c0 = static_cast<double>(la[0] - sign * lb[0]);
    const double c1 = static_cast<double>(la[1] - sign * lb[1]);
    const double c2 = static_cast<double>(la[2] - sign * lb[2]);
    if (c2 != 0) {
      lines_.push_back({-c0 / c2, -c1 / c2});
    } else if (c1 != 0) {
      verticals_.push_back(-c0 / c1);
    }
  }

  const VarietyModel& model_;
  std::vector<double> m_;
  std::vector<Affine> lines_;
  std::vector<double> verticals_;
};

}  // namespace

double projective_density(int n, double sigma) {
  if (!(sigma > n)) throw DomainError("archimedean integral diverges for sigma <= n");
  return std::pow(2.0, n) * sigma / (sigma - n);
}

LocalFactor archimedean_integral(const VarietyModel& model, std::span<const double> s) {
  const auto mu = pole_exponents(model, s);
  for (double x : mu) {
    if (!(x > 0)) throw DomainError("archimedean integral diverges for this parameter");
  }
  LocalFactor out;
  if (model.centers.empty()) {
    out.value = projective_density(model.dim, model.generator_exponents_real(s)[0]);
    return out;
  }
  if (model.dim != 2) throw CapabilityError("archimedean quadrature is implemented for surfaces only");
  const PlaneIntegrand h(model, s);
  // Inner errors count in proportion to the mass near x, roughly v * x.
  double inner_err = 0;
  auto g = [&](double x) {
    double e = 0;
    const double v = h.inner(x, &e);
    inner_err = std::max(inner_err, e * std::max(1.0, x));
    return v;
  };
  const auto xs = h.outer_breakpoints();
  double total = 0, err = 0, piece_err = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    total += segment(g, xs[k], xs[k + 1], &piece_err);
    err += piece_err;
  }
  exp_sinh<double> tail;
  total += tail.integrate(g, xs.back(), kInf, kTol, &piece_err);
  err += piece_err;
  // H(-x) = H(x): the half plane x >= 0 carries half the mass.
  out.value = 2 * total;
  out.provenance = Provenance::Quadrature;
  out.error_bound = 2 * err + 2 * inner_err + 2e-12 * std::abs(total);
  return out;
}

OscillatoryTail cosine_tail(double sigma, double omega) {
  if (!(sigma > 1)) throw DomainError("oscillatory integral needs sigma > 1");
  if (!(omega > 0)) throw DomainError("oscillatory integral needs omega > 0");
  constexpr int K = 24;
  const double X = std::max(1.0, 4 * (sigma + K) / omega);
  double value = 0, err = 0;
  // Panels of half a period on [1, X].
  const double width = std::numbers::pi / omega;
  const int panels = static_cast<int>(std::ceil((X - 1) / width));
  auto f = [&](double x) { return std::pow(x, -sigma) * std::cos(omega * x); };
  for (int k = 0; k < panels; ++k) {
    double a = 1 + k * width, b = std::min(X, a + width), e = 0;
    value += gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-14, &e);
    err += e;
  }
  // int_X^inf f e^{i w x} = -e^{i w X} sum_k f^{(k)}(X) (-1)^k / (i w)^{k+1} + R,
  // f^{(k)}(X) = (-1)^k (sigma)_k X^{-sigma-k}, |R| <= (sigma)_{K-1} X^{1-sigma-K} / w^K.
  std::complex<double> asym = 0;
  double rising = 1;
  for (int k = 0; k < K; ++k) {
    const double fk = rising * std::pow(X, -sigma - k);  // (-1)^k cancels
    asym -= fk / std::pow(std::complex<double>(0, omega), k + 1);
    rising *= sigma + k;
  }
  asym *= std::polar(1.0, omega * X);
  double rising_km1 = 1;
  for (int k = 0; k < K - 1; ++k) rising_km1 *= sigma + k;
  const double remainder = rising_km1 * std::pow(X, 1 - sigma - K) / std::pow(omega, K);
  value += asym.real();
  return {value, err + remainder + 1e-15 * (1 + std::abs(value))};
}

LocalFactor arch_fourier(const VarietyModel& model, std::span<const Rational> a, std::span<const double> s) {
  if (a.size() != static_cast<std::size_t>(model.dim)) throw DomainError("character index has the wrong length");
  const bool trivial = std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
  if (trivial) return archimedean_integral(model, s);
  if (model.id != ModelId::P1) {
    throw CapabilityError("archimedean transform at nonzero frequency is available for P1 only");
  }
  const double sigma = model.generator_exponents_real(s)[0];
  if (!(sigma > 1)) throw DomainError("archimedean integral diverges for sigma <= 1");
  const double omega = 2 * std::numbers::pi * std::abs(to_double(a[0]));
  // 2 int_0^1 cos + 2 int_1^inf x^{-sigma} cos; the sine part vanishes by parity.
  const auto tail = cosine_tail(sigma, omega);
  LocalFactor out;
  out.value = 2 * std::sin(omega) / omega + 2 * tail.value;
  out.provenance = Provenance::Quadrature;
  out.error_bound = 2 * tail.error_bound + 1e-15;
  return out;
}

}  // namespace manin
