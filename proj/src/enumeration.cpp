// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/enumeration.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "manin/heights.hpp"

namespace manin {

namespace {

constexpr Int kMaxRadius = Int{3'000'000'000};

void require_interior(const VarietyModel& model, const PicardVector& lambda) {
  if (lambda.size() != model.rank()) throw DomainError("Picard vector has the wrong rank for " + std::string(model.name()));
  if (!lambda.is_interior_effective()) throw DomainError("lambda must lie in the interior of the effective cone");
}

// Sum of f(i) over i in [lo, hi], worker w taking i = lo + w (mod threads).
// Integer partial sums make the total independent of the split.
template <class F>
Int partitioned_sum(Int lo, Int hi, unsigned threads, F f) {
  if (hi < lo) return 0;
  threads = std::max(1u, threads);
  if (threads == 1) {
    Int s = 0;
    for (Int i = lo; i <= hi; ++i) s += f(i);
    return s;
  }
  std::vector<Int> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      Int s = 0;
      for (Int i = lo + w; i <= hi; i += threads) s += f(i);
      partial[w] = s;
    });
  }
  for (auto& t : pool) t.join();
  return std::accumulate(partial.begin(), partial.end(), Int{0});
}

void check_budget(double candidates, const CountOptions& opts) {
  if (candidates > opts.candidate_budget) {
    throw ResourceError("search region has " + std::to_string(candidates) + " candidates, budget is " +
                        std::to_string(opts.candidate_budget));
  }
}

// Generator heights q_j of a primitive tuple.
void heights_of(const VarietyModel& model, std::span<const Int> c, std::vector<Int>& q) {
  for (std::size_t j = 0; j < model.generators.size(); ++j) {
    Int mx = 0, g = 0;
    for (const auto& s : model.generators[j].sections) {
      Int v = s.eval(c);
      mx = std::max(mx, std::abs(v));
      g = std::gcd(g, v);
    }
    q[j] = mx / g;
  }
}

// Every primitive tuple with the given Z and |X_i| <= R.
template <class F>
void scan_slice(const VarietyModel& model, const HeightBound& hb, Int R, Int z, F&& on_point) {
  const int n = model.dim;
  std::vector<Int> c(n + 1, -R);
  std::vector<Int> q(model.generators.size());
  c[0] = z;
  while (true) {
    Int g = z;
    for (int i = 1; i <= n && g != 1; ++i) g = std::gcd(g, c[i]);
    if (g == 1) {
      heights_of(model, c, q);
      if (hb.admits(q)) on_point(std::span<const Int>(c), std::span<const Int>(q));
    }
    int i = n;
    while (i >= 1 && c[i] == R) c[i--] = -R;
    if (i == 0) break;
    ++c[i];
  }
}

Int count_generic(const VarietyModel& model, const HeightBound& hb, Int R, const CountOptions& opts) {
  check_budget(static_cast<double>(R) * std::pow(2.0 * R + 1, model.dim), opts);
  return partitioned_sum(1, R, opts.threads, [&](Int z) {
    Int s = 0;
    scan_slice(model, hb, R, z, [&](auto, auto) { ++s; });
    return s;
  });
}

// P^n: the height depends only on max|coords|, so count primitive tuples in
// the cube, the last coordinate by inclusion-exclusion.
Int count_projective(const VarietyModel& model, const HeightBound& hb, Int R, const CountOptions& opts) {
  while (R >= 1 && !hb.admits(std::vector<Int>{R})) --R;
  if (R < 1) return 0;
  const int n = model.dim;
  check_budget(static_cast<double>(R) * std::pow(2.0 * R + 1, n - 1), opts);
  const FactorSieve sieve(R);
  return partitioned_sum(1, R, opts.threads, [&](Int z) {
    std::vector<Int> c(n, -R);
    std::vector<Int> primes;
    Int s = 0;
    while (true) {
      Int g = z;
      for (int i = 1; i < n; ++i) g = std::gcd(g, c[i]);
      sieve.distinct_primes(g, primes);
      s += count_coprime_symmetric(R, primes);
      int i = n - 1;
      while (i >= 1 && c[i] == R) c[i--] = -R;
      if (i == 0) break;
      ++c[i];
    }
    return s;
  });
}

// BlP2-1 with H(x) = q_H^{m_H} q_F^{m_F}, m_H > 0, m_F >= 0, where q_F is the
// height of (Y : Z). For each (Y, Z) the admissible X form a symmetric
// interval |X| <= T(q_F), filtered by coprimality to gcd(Y, Z).
Int count_blowup_one(const HeightBound& hb, Int R, const CountOptions& opts) {
  check_budget(static_cast<double>(R) * (R + 1), opts);
  std::vector<Int> T(static_cast<std::size_t>(R) + 1, 0);
  Int t = R;
  for (Int qf = 1; qf <= R; ++qf) {
    while (t >= 1 && !hb.admits(std::vector<Int>{t, qf})) --t;
    T[qf] = t;
  }
  const Int y_max = std::min(R, T[1]);
  const FactorSieve sieve(R);
  return partitioned_sum(1, y_max, opts.threads, [&](Int z) {
    std::vector<Int> primes;
    Int s = 0;
    for (Int y = 0; y <= y_max; ++y) {
      const Int m = std::max(y, z);
      const Int g = std::gcd(y, z);
      const Int tq = T[m / g];
      if (tq < m) continue;
      sieve.distinct_primes(g, primes);
      const Int c = count_coprime_symmetric(tq, primes);
      s += y == 0 ? c : 2 * c;
    }
    return s;
  });
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

double search_radius_real(const VarietyModel& model, const PicardVector& lambda, double B) {
  require_interior(model, lambda);
  if (!(B > 0)) return 0;
  // H(x; D_alpha) >= c_alpha and prod_alpha H(x; D_alpha) = q_H give
  // H(x; lambda) >= q_H^{lambda_min} prod c_alpha^{lambda_alpha - lambda_min}.
  const auto lam = lambda.to_real();
  const double lmin = *std::min_element(lam.begin(), lam.end());
  double log_k = 0;
  for (std::size_t a = 0; a < lam.size(); ++a) {
    log_k += (lam[a] - lmin) * std::log(to_double(model.boundary_height_floor[a]));
  }
  return std::exp((std::log(B) - log_k) / lmin);
}

Int search_radius(const VarietyModel& model, const PicardVector& lambda, const Rational& B) {
  if (sgn(B) <= 0) return 0;
  const double r = search_radius_real(model, lambda, to_double(B));
  if (r > static_cast<double>(kMaxRadius)) throw ResourceError("search radius too large");
  if (r < 1) return 0;
  return static_cast<Int>(std::floor(r * (1 + 1e-12))) + 1;
}

Int count_points(const VarietyModel& model, const PicardVector& lambda, const Rational& B, const CountOptions& opts) {
  const Int R = search_radius(model, lambda, B);
  if (R < 1) return 0;
  const auto m = model.generator_exponents(lambda);
  const HeightBound hb(m, B);
  if (model.centers.empty()) return count_projective(model, hb, R, opts);
  if (model.id == ModelId::BlP2_1 && m[0] > 0 && m[1] >= 0) return count_blowup_one(hb, R, opts);
  return count_generic(model, hb, R, opts);
}

void for_each_point(const VarietyModel& model, const PicardVector& lambda, const Rational& B,
                    const PointVisitor& visit, const CountOptions& opts) {
  const Int R = search_radius(model, lambda, B);
  if (R < 1) return;
  check_budget(static_cast<double>(R) * std::pow(2.0 * R + 1, model.dim), opts);
  const HeightBound hb(model.generator_exponents(lambda), B);
  for (Int z = 1; z <= R; ++z) scan_slice(model, hb, R, z, visit);
}

std::vector<Rational> geometric_bounds(double bottom, double top, int per_decade) {
  if (bottom < 1 || top < bottom || per_decade < 1) throw DomainError("invalid ladder specification");
  std::vector<Rational> out;
  const double lo = std::log10(bottom), hi = std::log10(top);
  for (int k = 0;; ++k) {
    double e = lo + static_cast<double>(k) / per_decade;
    if (e > hi + 1e-9) break;
    Rational b(std::llround(std::pow(10.0, e)));
    if (out.empty() || b > out.back()) out.push_back(b);
  }
  return out;
}

CountLadder count_ladder(const VarietyModel& model, const PicardVector& lambda, const std::vector<Rational>& bounds,
                         const CountOptions& opts) {
  CountLadder ladder{model.id, lambda, {}};
  for (const auto& b : bounds) {
    auto t0 = std::chrono::steady_clock::now();
    Int n = count_points(model, lambda, b, opts);
    ladder.rungs.push_back({b, n, elapsed_ms(t0)});
  }
  return ladder;
}

FitResult fit_leading(const CountLadder& ladder, double a, int b) {
  if (b < 1) throw DomainError("log power must be at least 1");
  const auto k = static_cast<Eigen::Index>(ladder.rungs.size());
  if (k < b + 2) throw DomainError("fit needs at least b + 2 rungs");
  Eigen::MatrixXd A(k, b);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double B = to_double(ladder.rungs[i].bound);
    const double L = std::log(B);
    for (int j = 0; j < b; ++j) A(i, j) = std::pow(L, j);
    y(i) = static_cast<double>(ladder.rungs[i].count) / std::pow(B, a);
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  return {std::vector<double>(c.data(), c.data() + c.size()), (A * c - y).norm()};
}

ExponentEstimate estimate_exponents(const CountLadder& ladder) {
  const auto k = static_cast<Eigen::Index>(ladder.rungs.size());
  if (k < 4) throw DomainError("exponent estimate needs at least 4 rungs");
  const double lo = to_double(ladder.rungs.front().bound), hi = to_double(ladder.rungs.back().bound);
  if (lo <= 1 || hi / lo < 999.5) throw DomainError("exponent estimate needs a ladder spanning 3 decades above 1");
  Eigen::MatrixXd A(k, 3);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& r = ladder.rungs[i];
    if (r.count <= 0) throw DomainError("exponent estimate needs positive counts");
    const double L = std::log(to_double(r.bound));
    A(i, 0) = 1;
    A(i, 1) = L;
    A(i, 2) = std::log(L);
    y(i) = std::log(static_cast<double>(r.count));
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  return {c(1), 1 + c(2)};
}

}  // namespace manin
