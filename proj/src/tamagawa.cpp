// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/tamagawa.hpp"

#include <cmath>

#include <boost/math/special_functions/zeta.hpp>

#include "manin/archimedean.hpp"
#include "manin/geometry.hpp"

namespace manin {

namespace {

constexpr double kBruteBudget = 6e6;

int moebius(int n) {
  int result = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

// Coefficients of f(x) = density(x) (1 - x)^rank, x = 1/p, lowest degree first.
std::vector<double> regularized_shape(const VarietyModel& model) {
  const auto total = model.total_points();
  const int n = model.dim;
  std::vector<double> f(n + 1, 0.0);
  for (std::size_t i = 0; i < total.coeffs.size(); ++i) f[n - i] += static_cast<double>(total.coeffs[i]);
  for (std::size_t k = 0; k < model.rank(); ++k) {
    std::vector<double> g(f.size() + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      g[i] += f[i];
      g[i + 1] -= f[i];
    }
    f = std::move(g);
  }
  return f;
}

std::vector<double> log_series(const std::vector<double>& f, int kmax) {
  if (f.empty() || f[0] != 1.0) throw DomainError("series must start with 1");
  auto coeff = [&](int i) { return i < static_cast<int>(f.size()) ? f[i] : 0.0; };
  std::vector<double> l(kmax + 1, 0.0);
  for (int n = 1; n <= kmax; ++n) {
    double s = n * coeff(n);
    for (int k = 1; k < n; ++k) s -= k * l[k] * coeff(n - k);
    l[n] = s / n;
  }
  return l;
}

double mu_check(const VarietyModel& model, std::span<const double> s, double floor) {
  const auto mu = pole_exponents(model, s);
  double lo = mu[0];
  for (double x : mu) lo = std::min(lo, x);
  if (!(lo > floor)) throw DomainError("parameter lies outside the region of convergence");
  return lo;
}

void require_good(const VarietyModel& model, Int p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (model.is_small_prime(p)) throw DomainError("closed form refused at a small prime");
}

}  // namespace

double zeta(double s) { return boost::math::zeta(s); }

double denef_local_factor(const VarietyModel& model, Int p, std::span<const double> s) {
  require_good(model, p);
  const auto mu = pole_exponents(model, s);
  mu_check(model, s, 0.0);
  const double P = static_cast<double>(p);
  double sum = 0;
  for (const auto& [A, poly] : model.stratum_polys) {
    double term = static_cast<double>(poly.eval(p));
    for (std::size_t a = 0; a < model.rank(); ++a) {
      if (A & (1u << a)) term *= (P - 1) / (std::pow(P, mu[a]) - 1);
    }
    sum += term;
  }
  return sum * std::pow(P, -model.dim);
}

Rational local_density(const VarietyModel& model, Int p) {
  require_good(model, p);
  return Rational(model.total_points().eval(p), ipow(p, model.dim));
}

LocalFactor local_density_factor(const VarietyModel& model, Int p) {
  if (!model.is_small_prime(p)) {
    LocalFactor out;
    out.place = p;
    out.value = to_double(local_density(model, p));
    return out;
  }
  const std::vector<Rational> zero(model.dim, Rational(0));
  const auto rho = model.rho().to_real();
  return brute_padic_fourier(model, p, zero, rho, depth_for_budget(model, p, zero, kBruteBudget));
}

LocalFactor archimedean_density(const VarietyModel& model) {
  return archimedean_integral(model, model.rho().to_real());
}

double regularization_residual(const VarietyModel& model, Int p, std::span<const double> s) {
  const auto mu = pole_exponents(model, s);
  double v = denef_local_factor(model, p, s);
  for (double m : mu) v *= 1 - std::pow(static_cast<double>(p), -m);
  return std::abs(v - 1);
}

std::vector<double> cyclotomic_exponents(const std::vector<double>& f, int kmax) {
  // log f = -sum_k b_k sum_j x^{kj} / j, so n l_n = -sum_{k | n} k b_k.
  const auto l = log_series(f, kmax);
  std::vector<double> b(kmax + 1, 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double s = 0;
    for (int d = 1; d <= k; ++d) {
      if (k % d == 0) s += moebius(k / d) * d * l[d];
    }
    b[k] = -s / k;
  }
  return b;
}

EulerProductResult euler_product(const VarietyModel& model, Int p_max) {
  if (p_max < 100) throw DomainError("the Euler product needs P_max >= 100");
  const int rank = static_cast<int>(model.rank());
  const auto shape = regularized_shape(model);
  constexpr int kSeries = 160;
  const auto b = cyclotomic_exponents(shape, kSeries);
  const auto l = log_series(shape, kSeries);
  if (std::abs(b[1]) > 1e-9) throw DomainError("regularized factor is not 1 + O(p^-2)");

  EulerProductResult out;
  out.p_max = p_max;
  out.small_prime_error = 0;
  const auto primes = primes_up_to(p_max);
  long double log_partial = 0;
  for (Int p : primes) {
    const double x = 1.0 / static_cast<double>(p);
    double f;
    if (model.is_small_prime(p)) {
      const auto d = local_density_factor(model, p);
      f = d.value.real() * std::pow(1 - x, rank);
      out.small_prime_error += d.error_bound / d.value.real();
    } else {
      f = to_double(local_density(model, p)) * std::pow(1 - x, rank);
    }
    log_partial += std::log(static_cast<long double>(f));
  }
  out.partial = static_cast<double>(std::exp(log_partial));
  const double P = static_cast<double>(p_max);

  // |log prod_{p > P} f(1/p)| <= sum_k |l_k| sum_{p > P} p^{-k}.
  double crude = 0;
  for (int k = 2; k <= kSeries; ++k) crude += std::abs(l[k]) * std::pow(P, 1 - k) / (k - 1);
  out.partial_tail = std::expm1(crude);

  // Peel zeta(k)^{-b_k} for k <= kmax; the rest is below double resolution.
  int kmax = 2;
  auto residual_from = [&](int k0) {
    double r = 0;
    for (int k = k0; k <= kSeries; ++k) r += std::abs(b[k]) * std::pow(P, 1 - k) / (k - 1);
    return r;
  };
  while (kmax < kSeries - 1 && residual_from(kmax + 1) > 1e-18) ++kmax;
  const double residual = residual_from(kmax + 1);

  // T_k = sum_{p > P} log(1 - p^-k). Small k through zeta, large k directly.
  const Int p_far = std::max<Int>(10 * p_max, 100000);
  const auto far_primes = primes_up_to(p_far);
  double log_tail = 0, direct_cut = 0;
  for (int k = 2; k <= kmax; ++k) {
    if (b[k] == 0) continue;
    long double t = 0;
    if (k <= 3) {
      t = -std::log(static_cast<long double>(zeta(k)));
      for (Int p : primes) t -= std::log1p(-std::pow(static_cast<long double>(p), -k));
    } else {
      for (Int p : far_primes) {
        if (p > p_max) t += std::log1p(-std::pow(static_cast<long double>(p), -k));
      }
      direct_cut += std::abs(b[k]) * 1.01 * std::pow(static_cast<double>(p_far), 1 - k) / (k - 1);
    }
    log_tail += b[k] * static_cast<double>(t);
    if (std::abs(b[k]) > 1e-12) out.peeled.emplace_back(k, b[k]);
  }
  out.complete = out.partial * std::exp(log_tail);
  const double rounding = 1e-15 * static_cast<double>(far_primes.size());
  const double rel = residual + direct_cut + rounding + out.small_prime_error;
  out.complete_bound = std::abs(out.complete) * std::expm1(rel);
  return out;
}

TamagawaResult tamagawa_number(const VarietyModel& model, Int p_max) {
  TamagawaResult out;
  out.arch = archimedean_density(model);
  out.euler = euler_product(model, p_max);
  const double arch = out.arch.value.real();
  out.tamagawa = arch * out.euler.complete;
  out.bound = arch * out.euler.complete_bound + out.arch.error_bound * out.euler.complete;
  return out;
}

PredictedConstant predicted_constant(const VarietyModel& model, Int p_max) {
  PredictedConstant out;
  out.tamagawa = tamagawa_number(model, p_max);
  double scale = 1;
  for (std::size_t k = 2; k < model.rank(); ++k) scale /= static_cast<double>(k);
  for (const auto& c : model.components) scale /= c.rho;
  out.value = out.tamagawa.tamagawa * scale;
  out.bound = out.tamagawa.bound * scale;
  return out;
}

}  // namespace manin
