// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "manin/archimedean.hpp"
#include "manin/tamagawa.hpp"

namespace manin {

namespace {

bool all_zero(std::span<const Int> a) {
  return std::all_of(a.begin(), a.end(), [](Int v) { return v == 0; });
}

Int center_pairing(std::span<const Int> a, const std::array<Int, 3>& c) { return a[0] * c[0] + a[1] * c[1]; }

void check_character(const VarietyModel& model, std::span<const Int> a) {
  if (a.size() != static_cast<std::size_t>(model.dim)) throw DomainError("character index has the wrong length");
}

std::vector<Rational> as_rational(std::span<const Int> a) {
  std::vector<Rational> out;
  for (Int v : a) out.emplace_back(v);
  return out;
}

double brute_bound_estimate(const VarietyModel& model, Int p, std::span<const double> s, int depth, bool trivial) {
  double remainder = 0;
  const double tail = shell_tail(model, p, s, depth, remainder);
  return trivial ? remainder : tail + remainder;
}

LocalFactor brute_auto(const VarietyModel& model, Int p, std::span<const Int> a, std::span<const double> s,
                       const FourierOptions& opts) {
  const auto ar = as_rational(a);
  const bool trivial = all_zero(a);
  int depth = 1;
  while (brute_bound_estimate(model, p, s, depth, trivial) > opts.brute_tolerance &&
         brute_cell_count(model, p, ar, depth + 1) <= opts.brute_budget) {
    ++depth;
  }
  std::tuple<Int, std::vector<Int>> key;
  if (opts.cache) {
    const Int mod = ipow(p, depth);
    std::vector<Int> residues{trivial ? 1 : 0, depth};
    for (Int v : a) residues.push_back(((v % mod) + mod) % mod);
    key = {p, residues};
    if (auto it = opts.cache->find(key); it != opts.cache->end()) return it->second;
  }
  auto out = brute_padic_fourier(model, p, ar, s, depth);
  if (opts.cache) opts.cache->emplace(key, out);
  return out;
}

std::vector<Int> prime_divisors(Int m) {
  std::vector<Int> out;
  m = std::abs(m);
  for (Int q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    out.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

Int boundary_incidence(const VarietyModel& model, std::span<const Int> a, std::size_t alpha, Int p) {
  check_character(model, a);
  if (model.centers.empty()) {
    // {Z = 0, <a, X> = 0} is a P^{n-2} inside the hyperplane at infinity.
    return (ipow(p, model.dim - 1) - 1) / (p - 1);
  }
  int hit = -1;
  for (std::size_t i = 0; i < model.centers.size(); ++i) {
    if (center_pairing(a, model.centers[i]) % p == 0) hit = static_cast<int>(i);
  }
  if (alpha == 0) return hit < 0 ? 1 : 0;
  return hit == static_cast<int>(alpha) - 1 ? 1 : 0;
}

bool is_good_prime(const VarietyModel& model, std::span<const Int> a, Int p) {
  check_character(model, a);
  if (model.is_small_prime(p) || !is_prime(p)) return false;
  return !std::all_of(a.begin(), a.end(), [p](Int v) { return v % p == 0; });
}

std::vector<Int> bad_primes(const VarietyModel& model, std::span<const Int> a) {
  check_character(model, a);
  std::vector<Int> out;
  if (all_zero(a)) return out;
  Int g = 0;
  for (Int v : a) g = gcd(g, v);
  out = prime_divisors(g);
  std::erase_if(out, [&](Int q) { return model.is_small_prime(q); });
  return out;
}

DivisorData reduced_divisor(const VarietyModel& model, std::span<const Int> a, Int p) {
  auto d = divisor_multiplicities(model, a);
  for (std::size_t i = 0; i < model.centers.size(); ++i) {
    if (center_pairing(a, model.centers[i]) % p == 0) d.d[i + 1] = 0;
  }
  d.a0 = d.a1 = 0;
  for (std::size_t alpha = 0; alpha < d.d.size(); ++alpha) {
    if (d.d[alpha] == 0) d.a0 |= 1u << alpha;
    if (d.d[alpha] == 1) d.a1 |= 1u << alpha;
  }
  return d;
}

GoodPrimeValue closed_form_good_prime(const VarietyModel& model, Int p, std::span<const Int> a,
                                      std::span<const double> s) {
  check_character(model, a);
  if (all_zero(a)) throw DomainError("the trivial character goes through the Denef factor");
  if (!is_good_prime(model, a, p)) throw DomainError("closed form refused: " + std::to_string(p) + " is bad for a");
  const auto mu = pole_exponents(model, s);
  for (double m : mu) {
    if (!(m > 0)) throw DomainError("parameter lies outside the region of convergence");
  }
  GoodPrimeValue out;
  out.divisor = reduced_divisor(model, a, p);
  const double P = static_cast<double>(p);
  const double scale = std::pow(P, -model.dim);
  auto pole = [&](std::size_t alpha) { return (P - 1) / (std::pow(P, mu[alpha]) - 1); };

  double main = 1, et = 0;
  for (std::size_t alpha = 0; alpha < model.rank(); ++alpha) {
    const Int on_e = boundary_incidence(model, a, alpha, p);
    const double off_e = static_cast<double>(stratum_count(model, 1u << alpha, p) - on_e);
    if (out.divisor.d[alpha] == 0) main += scale * off_e * pole(alpha);
    if (out.divisor.d[alpha] == 1) main -= scale * off_e * std::pow(P, -mu[alpha]);
    et += scale * static_cast<double>(on_e) * pole(alpha);
  }
  for (const auto& [A, poly] : model.stratum_polys) {
    if (popcount(A) < 2) continue;
    double term = scale * static_cast<double>(poly.eval(p));
    for (std::size_t alpha = 0; alpha < model.rank(); ++alpha) {
      if (A & (1u << alpha)) term *= pole(alpha);
    }
    et += term;
  }
  out.main = main;
  out.et_bound = et;
  return out;
}

LocalFactor local_fourier(const VarietyModel& model, Int p, std::span<const Int> a, std::span<const double> s,
                          const FourierOptions& opts) {
  check_character(model, a);
  LocalFactor out;
  out.place = p;
  if (all_zero(a) && !model.is_small_prime(p)) {
    out.value = denef_local_factor(model, p, s);
    return out;
  }
  if (!all_zero(a) && is_good_prime(model, a, p)) {
    const auto g = closed_form_good_prime(model, p, a, s);
    out.value = g.main;
    out.error_bound = g.et_bound;
    return out;
  }
  return brute_auto(model, p, a, s, opts);
}

FiniteFourier finite_fourier(const VarietyModel& model, std::span<const Int> a, std::span<const double> s,
                             const FourierOptions& opts) {
  check_character(model, a);
  if (opts.p_max < 5) throw DomainError("P_max must be at least 5");
  const auto mu = pole_exponents(model, s);
  FiniteFourier out{};
  out.accelerated = all_zero(a) ? (1u << model.rank()) - 1 : divisor_multiplicities(model, a).a0;
  for (std::size_t alpha = 0; alpha < model.rank(); ++alpha) {
    if (!(mu[alpha] > 0)) throw DomainError("parameter lies outside the region of convergence");
    if ((out.accelerated & (1u << alpha)) && !(mu[alpha] > 1)) {
      throw DomainError("zeta acceleration needs 1 + s_alpha - rho_alpha > 1 on A_0(a)");
    }
  }
  auto peel = [&](Int p) {
    double f = 1;
    for (std::size_t alpha = 0; alpha < model.rank(); ++alpha) {
      if (out.accelerated & (1u << alpha)) f *= 1 - std::pow(static_cast<double>(p), -mu[alpha]);
    }
    return f;
  };

  // Beyond P_max the tail assumes the generic shape; primes where f_a
  // degenerates or meets a center modulo p are taken explicitly.
  auto primes = primes_up_to(opts.p_max);
  std::vector<Int> special = bad_primes(model, a);
  for (const auto& ctr : model.centers) {
    const Int v = all_zero(a) ? 0 : center_pairing(a, ctr);
    if (v != 0) {
      for (Int q : prime_divisors(v)) special.push_back(q);
    }
  }
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());
  for (Int q : special) {
    if (q > opts.p_max) primes.push_back(q);
  }
  long double prod = 1;
  double rel = 0;
  const double mu_min = *std::min_element(mu.begin(), mu.end());
  const double c = 1 + mu_min;
  double k_sample = 0;
  for (Int p : primes) {
    const auto f = local_fourier(model, p, a, s, opts);
    if (f.provenance == Provenance::BruteForce) out.brute_primes.push_back(p);
    const double v = f.value.real();
    const double err = f.error_bound + std::abs(f.value.imag());
    if (!(std::abs(v) > err)) throw ResourceError("local factor at " + std::to_string(p) + " is not resolved");
    const double r = v * peel(p);
    prod *= r;
    rel += err / std::abs(v);
    if (p <= opts.p_max && 2 * p > opts.p_max && f.provenance != Provenance::BruteForce) {
      k_sample = std::max(k_sample, (std::abs(r - 1) + err) * std::pow(static_cast<double>(p), c));
    }
  }
  // |r_p - 1| <= K p^{-c} beyond P_max, K sampled on (P_max / 2, P_max].
  const double P = static_cast<double>(opts.p_max);
  out.tail_bound = std::expm1(2 * k_sample * std::pow(P, 1 - c) / (c - 1));
  double zeta_part = 1;
  for (std::size_t alpha = 0; alpha < model.rank(); ++alpha) {
    if (out.accelerated & (1u << alpha)) zeta_part *= zeta(mu[alpha]);
  }
  out.value = static_cast<double>(prod) * zeta_part;
  const double rounding = 4 * std::numeric_limits<double>::epsilon() * static_cast<double>(primes.size());
  out.bound = std::abs(out.value) * std::expm1(rel + out.tail_bound + rounding);
  return out;
}

GlobalFourier global_fourier(const VarietyModel& model, std::span<const Int> a, std::span<const double> s,
                             const FourierOptions& opts) {
  GlobalFourier out;
  const auto ar = as_rational(a);
  out.arch = arch_fourier(model, ar, s);
  out.finite = finite_fourier(model, a, s, opts);
  const double arch = out.arch.value.real();
  out.value = arch * out.finite.value;
  out.bound = std::abs(arch) * out.finite.bound + (out.arch.error_bound + std::abs(out.arch.value.imag())) *
                                                      (std::abs(out.finite.value) + out.finite.bound);
  return out;
}

ZetaTruncated zeta_truncated(const VarietyModel& model, const PicardVector& lambda, double s, const Rational& B_cut,
                             const CountOptions& count_opts) {
  const double a = to_double(a_exponent(model, lambda));
  const int b = b_exponent(model, lambda);
  if (!(s > a)) throw DomainError("height zeta function diverges for s <= a(lambda)");
  const auto m = model.generator_exponents(lambda);
  std::vector<double> md;
  for (const auto& x : m) md.push_back(to_double(x));

  ZetaTruncated out{};
  long double sum = 0;
  Int count = 0;
  for_each_point(
      model, lambda, B_cut,
      [&](std::span<const Int>, std::span<const Int> q) {
        double log_h = 0;
        for (std::size_t j = 0; j < q.size(); ++j) {
          if (md[j] != 0) log_h += md[j] * std::log(static_cast<double>(q[j]));
        }
        sum += std::exp(static_cast<long double>(-s * log_h));
        ++count;
      },
      count_opts);
  out.partial = static_cast<double>(sum);
  out.points = count;

  // tail = -B^{-s} N(B) + s int_B^inf t^{-s-1} N(t) dt, t = e^u.
  const double Bc = to_double(B_cut);
  const double U = std::log(Bc);
  const double N = static_cast<double>(count);
  boost::math::quadrature::exp_sinh<double> integrator;
  const double C = N / (std::pow(Bc, a) * std::pow(U, b - 1));
  auto model_tail = [&](double v) { return s * C * std::exp((a - s) * (U + v)) * std::pow(U + v, b - 1); };
  const double boundary = N * std::pow(Bc, -s);
  out.tail_estimate = integrator.integrate(model_tail, 0.0, std::numeric_limits<double>::infinity()) - boundary;

  const auto lam = lambda.to_real();
  const double lmin = *std::min_element(lam.begin(), lam.end());
  const int n = model.dim;
  double upper = std::numeric_limits<double>::infinity();
  if (s > (n + 1) / lmin) {
    // r(t) = r(B) (t / B)^{1 / lambda_min}; everything in logs to avoid inf * 0.
    const double log_r0 = std::log(search_radius_real(model, lambda, Bc));
    auto envelope = [&](double v) {
      const double lr = log_r0 + v / lmin;
      const double log_count = lr + std::log1p(std::exp(-lr)) + n * (std::log(2.0) + lr + std::log1p(1.5 * std::exp(-lr)));
      return std::exp(std::log(s) - s * (U + v) + log_count);
    };
    upper = integrator.integrate(envelope, 0.0, std::numeric_limits<double>::infinity()) - boundary;
  }
  out.tail_bound = std::max(out.tail_estimate, upper - out.tail_estimate);
  return out;
}

PoissonReport poisson_check(const VarietyModel& model, const PicardVector& lambda, double s, const Rational& B_cut,
                            Int a_cut, Int p_max, const CountOptions& count_opts) {
  if (model.id != ModelId::P1) throw CapabilityError("the Poisson check is implemented for P1 only");
  if (a_cut < 0) throw DomainError("a_cut must be nonnegative");
  PoissonReport out{};
  out.a_cut = a_cut;
  const auto z = zeta_truncated(model, lambda, s, B_cut, count_opts);
  out.lhs = z.partial + z.tail_estimate;
  out.lhs_bound = z.tail_bound + 1e-15 * static_cast<double>(z.points) * z.partial;

  std::vector<double> ss;
  for (double x : lambda.to_real()) ss.push_back(s * x);
  const double sigma = model.generator_exponents_real(ss)[0];
  BruteCache cache;
  FourierOptions opts;
  opts.p_max = p_max;
  opts.cache = &cache;
  // H(psi_{-a}) = H(psi_a) since the height is even.
  for (Int a = 0; a <= a_cut; ++a) {
    const std::vector<Int> av{a};
    const auto g = global_fourier(model, av, ss, opts);
    const double w = a == 0 ? 1 : 2;
    out.rhs += w * g.value;
    out.rhs_bound += w * g.bound;
  }
  // |H_inf(psi_a)| <= 2 sigma / w^2 (1 + (sigma + 1) / w), w = 2 pi a, and the
  // finite part is at most the trivial one, zeta(sigma - 1) / zeta(sigma).
  const double A = static_cast<double>(a_cut);
  const double two_pi = 2 * std::numbers::pi;
  const double inv_square_tail = a_cut == 0 ? std::numbers::pi * std::numbers::pi / 6 : 1 / A;
  out.a_tail_bound = 2 * (2 * sigma / (two_pi * two_pi)) * (1 + (sigma + 1) / (two_pi * (A + 1))) *
                     inv_square_tail * zeta(sigma - 1) / zeta(sigma);
  out.diff = std::abs(out.lhs - out.rhs);
  out.combined_bound = out.lhs_bound + out.rhs_bound + out.a_tail_bound;
  out.relative = out.diff / std::abs(out.lhs);
  return out;
}

}  // namespace manin
