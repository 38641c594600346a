// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/padic.hpp"

#include <cmath>
#include <numbers>

namespace manin {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

Complex unit_root(Int r, Int modulus) {
  const long double t = kTwoPi * static_cast<long double>(r) / static_cast<long double>(modulus);
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

Int reduce(Int a, Int m) { return ((a % m) + m) % m; }

// Neumaier summation; millions of cells would otherwise drift by ~1e-13.
struct CompensatedSum {
  long double sum = 0, carry = 0;
  void add(long double x) {
    const long double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  long double value() const { return sum + carry; }
};

// a * p^e as an element of Z/p^k, for rational a with v_p(a) >= -e.
Int padic_residue(const Rational& a, Int p, int e, int k) {
  const Int mod = ipow(p, k);
  if (sgn(a) == 0) return 0;
  Int num = a.numerator(), den = a.denominator();
  int vd = 0;
  while (den % p == 0) {
    den /= p;
    ++vd;
  }
  // a p^e = num p^{e - vd} / den with e - vd >= 0
  Int scaled = reduce(num, mod);
  for (int i = 0; i < e - vd; ++i) scaled = static_cast<Int>(static_cast<__int128>(scaled) * p % mod);
  return static_cast<Int>(static_cast<__int128>(scaled) * mod_inverse(reduce(den, mod), mod) % mod);
}

int ramification(std::span<const Rational> a, Int p) {
  int e = 0;
  for (const auto& x : a) {
    if (sgn(x) != 0) e = std::max(e, -valuation(x, p));
  }
  return e;
}

bool separable_last(const VarietyModel& model, std::span<const Rational> a, int scale) {
  return scale == 0 && model.last_coordinate_separable() && sgn(a.back()) == 0 && model.dim > 1;
}

int resolve_scale(std::span<const Rational> a, Int p, int scale) {
  const int e = ramification(a, p);
  if (scale < 0) return e;
  if (scale < e) throw DomainError("scale is too coarse for the character");
  return scale;
}

void check_prime(Int p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::BruteForce: return "brute-force";
    case Provenance::Quadrature: return "quadrature";
  }
  return "?";
}

Complex character_value(Int p, const Rational& x) {
  check_prime(p);
  if (sgn(x) == 0) return 1.0;
  Int den = x.denominator();
  int k = 0;
  while (den % p == 0) {
    den /= p;
    ++k;
  }
  if (k == 0) return 1.0;
  const Int mod = ipow(p, k);
  const Int r = static_cast<Int>(static_cast<__int128>(reduce(x.numerator(), mod)) * mod_inverse(reduce(den, mod), mod) % mod);
  return unit_root(r, mod);
}

Complex character_sum(Int p, Int u, int n, int d, SumMethod method) {
  check_prime(p);
  if (p < 5) throw DomainError("character sums are only evaluated for p >= 5");
  if (u % p == 0) throw DomainError("u must be a p-adic unit");
  if (n < 1 || d < 0) throw DomainError("need n >= 1 and d >= 0");
  const int N = d == 0 ? 1 : n * d;
  const Int mod = ipow(p, N);
  if (method == SumMethod::Auto) method = (mod <= 2'000'000 || N <= 1) ? SumMethod::Direct : SumMethod::Lifted;

  std::complex<long double> acc = 0;
  if (method == SumMethod::Direct || N <= 1) {
    const Int ur = reduce(u, mod);
    for (Int t = 1; t < mod; ++t) {
      if (t % p == 0) continue;
      // d = 0: the argument u is integral and the character is trivial.
      const Int phase = d == 0 ? 0 : static_cast<Int>(static_cast<__int128>(ur) * mod_pow(t, d, mod) % mod);
      acc += std::complex<long double>(unit_root(phase, mod));
    }
    return Complex(acc / static_cast<long double>(mod));
  }
  const int c = (N + 1) / 2;
  const Int lift = ipow(p, c);
  const Int inner = ipow(p, N - c);
  for (Int t0 = 1; t0 < lift; ++t0) {
    if (t0 % p == 0) continue;
    const __int128 slope = static_cast<__int128>(reduce(u, inner)) * (d % inner) % inner * mod_pow(t0, d - 1, inner) % inner;
    if (slope != 0) continue;
    const Int phase = static_cast<Int>(static_cast<__int128>(reduce(u, mod)) * mod_pow(t0, d, mod) % mod);
    acc += std::complex<long double>(unit_root(phase, mod)) * static_cast<long double>(inner);
  }
  return Complex(acc / static_cast<long double>(mod));
}

std::vector<double> pole_exponents(const VarietyModel& model, std::span<const double> s) {
  if (s.size() != model.rank()) throw DomainError("parameter has the wrong rank for " + std::string(model.name()));
  std::vector<double> mu;
  for (std::size_t a = 0; a < s.size(); ++a) mu.push_back(1 + s[a] - model.components[a].rho);
  return mu;
}

double shell_tail(const VarietyModel& model, Int p, std::span<const double> s, int m, double& remainder) {
  check_prime(p);
  const auto mu = pole_exponents(model, s);
  const double mu_min = *std::min_element(mu.begin(), mu.end());
  if (!(mu_min > 0)) throw DomainError("height is not integrable at p for this parameter");
  const auto g = model.generator_exponents_real(s);
  const double P = static_cast<double>(p);
  const int n = model.dim;

  // Shell e: x = u / p^e with u primitive; its measure is p^{ne}(1 - p^{-n}).
  auto shell = [&](int e) -> double {
    const double vol = std::pow(P, n * e) * (1 - std::pow(P, -n));
    if (model.centers.empty()) return vol * std::pow(P, -g[0] * e);
    // Directions of u mod p: generic ones avoid every form l_i; a fraction
    // 1/(p+1) sits on the zero of l_i, where v(l_i(u)) = j >= 1 with
    // probability (1 - 1/p) p^{-(j-1)}. The zeros are distinct mod p.
    const std::size_t r = model.centers.size();
    double fsum = 0;
    for (std::size_t i = 0; i < r; ++i) fsum += g[i + 1];
    double total = (P + 1 - static_cast<double>(r)) / (P + 1) * std::pow(P, -(g[0] + fsum) * e);
    for (std::size_t i = 0; i < r; ++i) {
      const double mf = g[i + 1];
      double near = std::pow(P, -(e - 1));  // v >= e: F_i has no pole
      for (int j = 1; j < e; ++j) near += (1 - 1 / P) * std::pow(P, -(j - 1)) * std::pow(P, -mf * (e - j));
      total += near / (P + 1) * std::pow(P, -(g[0] + fsum - mf) * e);
    }
    return vol * total;
  };

  double sum = 0, last = 0;
  int e = m + 1;
  for (; e <= m + 4000; ++e) {
    last = shell(e);
    sum += last;
    if (e > m + 3 && last <= 1e-19 * std::max(sum, 1e-300)) break;
  }
  // Terms decay like e * p^{-mu_min e}; extrapolate geometrically.
  const double q = std::min(0.999, std::pow(P, -mu_min) * (e + 3.0) / (e + 1.0));
  remainder = last * q / (1 - q);
  return sum;
}

double brute_cell_count(const VarietyModel& model, Int p, std::span<const Rational> a, int depth, int scale) {
  scale = resolve_scale(a, p, scale);
  const double side = std::pow(static_cast<double>(p), depth + scale);
  const int n = model.dim;
  if (separable_last(model, a, scale)) return std::pow(side, n - 1) * (depth + 1);
  return std::pow(side, n);
}

int depth_for_budget(const VarietyModel& model, Int p, std::span<const Rational> a, double cell_budget) {
  int m = 1;
  while (m < 60 && brute_cell_count(model, p, a, m + 1) <= cell_budget) ++m;
  return m;
}

LocalFactor brute_padic_fourier(const VarietyModel& model, Int p, std::span<const Rational> a,
                                std::span<const double> s, int depth, int scale) {
  check_prime(p);
  const int n = model.dim;
  if (a.size() != static_cast<std::size_t>(n)) throw DomainError("character index has the wrong length");
  if (depth < 1) throw DomainError("depth must be positive");
  const auto mu = pole_exponents(model, s);
  for (double x : mu) {
    if (!(x > 0)) throw DomainError("parameter lies outside the region of absolute convergence");
  }
  const int e = ramification(a, p);
  scale = resolve_scale(a, p, scale);
  if (brute_cell_count(model, p, a, depth, scale) > 5e8) throw ResourceError("brute-force grid too large");

  const auto gexp = model.generator_exponents_real(s);
  const Int M = ipow(p, depth);             // height resolution
  const Int side = ipow(p, depth + scale);  // cell resolution
  const Int phase_mod = ipow(p, depth + e);
  std::vector<Int> ahat;
  for (const auto& x : a) ahat.push_back(padic_residue(x, p, e, depth + e));

  // v_p of residues mod p^depth, capped at depth.
  std::vector<int> vtab(static_cast<std::size_t>(M));
  vtab[0] = depth;
  for (Int r = 1; r < M; ++r) {
    int v = 0;
    Int t = r;
    while (t % p == 0) {
      t /= p;
      ++v;
    }
    vtab[r] = v;
  }
  std::vector<std::vector<double>> weight(model.generators.size(), std::vector<double>(depth + 1));
  for (std::size_t j = 0; j < weight.size(); ++j) {
    for (int k = 0; k <= depth; ++k) weight[j][k] = std::pow(static_cast<double>(p), -gexp[j] * k);
  }
  std::vector<Complex> roots(static_cast<std::size_t>(phase_mod));
  for (Int r = 0; r < phase_mod; ++r) roots[r] = unit_root(r, phase_mod);

  const bool aggregate = separable_last(model, a, scale);
  const int free_coords = aggregate ? n - 1 : n;
  std::vector<Int> u(n + 1, 0);  // u[0] unused, mirrors the Z slot
  std::vector<Int> cls_rep, cls_count;
  if (aggregate) {
    for (int j = 0; j <= depth; ++j) {
      cls_rep.push_back(j == depth ? 0 : ipow(p, j));
      cls_count.push_back(j == depth ? 1 : (p - 1) * ipow(p, depth - j - 1));
    }
  } else {
    cls_rep.push_back(0);
    cls_count.push_back(1);
  }

  auto cell_height = [&]() {
    double w = 1;
    for (std::size_t j = 0; j < model.generators.size(); ++j) {
      int vmin = depth;
      for (const auto& sec : model.generators[j].sections) {
        Int val = sec.coeffs[0] * M;
        for (int i = 1; i <= n; ++i) val += sec.coeffs[i] * u[i];
        vmin = std::min(vmin, vtab[reduce(val, M)]);
      }
      w *= weight[j][depth - vmin];
    }
    return w;
  };

  CompensatedSum acc_re, acc_im;
  std::vector<Int> cell(free_coords, 0);
  while (true) {
    Int phase = 0;
    for (int i = 0; i < free_coords; ++i) {
      u[i + 1] = cell[i] % M;
      phase = static_cast<Int>((phase + static_cast<__int128>(ahat[i]) * cell[i]) % phase_mod);
    }
    const Complex chi = roots[phase];
    for (std::size_t c = 0; c < cls_rep.size(); ++c) {
      if (aggregate) u[n] = cls_rep[c];
      const Complex term = chi * (cell_height() * static_cast<double>(cls_count[c]));
      acc_re.add(term.real());
      acc_im.add(term.imag());
    }
    int i = free_coords - 1;
    while (i >= 0 && cell[i] == side - 1) cell[i--] = 0;
    if (i < 0) break;
    ++cell[i];
  }
  const double cell_volume = std::pow(static_cast<double>(p), -scale * n);
  LocalFactor out;
  out.place = p;
  out.provenance = Provenance::BruteForce;
  out.depth = depth;
  out.value = Complex(static_cast<double>(acc_re.value()), static_cast<double>(acc_im.value())) * cell_volume;

  double remainder = 0;
  const double tail = shell_tail(model, p, s, depth, remainder);
  const bool trivial = std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
  const double rounding = 1e-13 * (std::abs(out.value) + tail) + 1e-300;
  if (trivial) {
    out.value += tail;
    out.error_bound = remainder + rounding;
  } else {
    out.error_bound = tail + remainder + rounding;
  }
  return out;
}

}  // namespace manin
