// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manin/acceptance.hpp"
#include "manin/enumeration.hpp"
#include "manin/fourier.hpp"
#include "manin/geometry.hpp"
#include "manin/padic.hpp"
#include "manin/report.hpp"
#include "manin/tamagawa.hpp"

namespace {

using namespace manin;
using Clock = std::chrono::steady_clock;

constexpr int kExitAcceptance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;
constexpr int kExitResource = 4;

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "5,7,11" or "5..13" (primes in the range).
std::vector<Int> parse_primes(const std::string& text) {
  std::vector<Int> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const Int lo = parse_rational(text.substr(0, dots)).numerator();
    const Int hi = parse_rational(text.substr(dots + 2)).numerator();
    for (Int p : primes_up_to(hi)) {
      if (p >= lo) out.push_back(p);
    }
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
      const Int p = parse_rational(item).numerator();
      if (!is_prime(p)) throw DomainError(item + " is not prime");
      out.push_back(p);
    }
  }
  if (out.empty()) throw DomainError("no primes in '" + text + "'");
  return out;
}

PicardVector lambda_or_rho(const VarietyModel& m, const std::string& text) {
  if (text.empty()) return m.rho();
  auto lam = PicardVector::parse(text);
  if (lam.size() != m.rank()) throw DomainError("lambda needs " + std::to_string(m.rank()) + " coordinates");
  return lam;
}

Json pic_json(const PicardVector& v) {
  Json j = Json::array();
  for (const auto& c : v.coeffs()) j.push_back(to_string(c));
  return j;
}

void emit(const RunReport& report, const std::string& out) {
  if (!out.empty() && ends_with(out, ".json")) report.write(out);
  std::cout << report.to_json().dump(2) << std::endl;
}

struct Fitted {
  double a;
  int b;
  double leading;
  Json json;
};

Fitted fit_ladder(const VarietyModel& m, const CountLadder& ladder) {
  const double a = to_double(a_exponent(m, ladder.lambda));
  const int b = b_exponent(m, ladder.lambda);
  Fitted f{a, b, 0.0, Json::object()};
  f.json["a"] = to_string(a_exponent(m, ladder.lambda));
  f.json["b"] = b;
  if (static_cast<int>(ladder.rungs.size()) >= b + 2) {
    const auto fit = fit_leading(ladder, a, b);
    f.leading = fit.leading();
    f.json["coefficients"] = fit.coeffs;
    f.json["leading"] = f.leading;
    f.json["residual"] = fit.residual;
  }
  const double lo = ladder.rungs.empty() ? 0 : to_double(ladder.rungs.front().bound);
  const double hi = ladder.rungs.empty() ? 0 : to_double(ladder.rungs.back().bound);
  if (ladder.rungs.size() >= 4 && lo > 1 && hi / lo >= 999.5) {
    const auto e = estimate_exponents(ladder);
    f.json["a_hat"] = e.a_hat;
    f.json["b_hat"] = e.b_hat;
  }
  return f;
}

/// Leading constant c_lambda * tau / (b - 1)! at lambda = rho; elsewhere none.
double prediction_for(const VarietyModel& m, const PicardVector& lambda) {
  if (!(lambda == m.rho())) return std::nan("");
  return predicted_constant(m).value;
}

int cmd_list_models(const std::string& out) {
  Json arr = Json::array();
  for (ModelId id : all_model_ids()) {
    const auto& m = load_model(id);
    Json rho = Json::array();
    for (const auto& c : m.components) rho.push_back(c.rho);
    arr.push_back({{"id", m.name()}, {"dim", m.dim}, {"rank", m.rank()}, {"rho", rho}});
  }
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw ResourceError("cannot write " + out);
    f << arr.dump(2) << '\n';
  }
  std::cout << arr.dump(2) << std::endl;
  return 0;
}

int cmd_count(const std::string& model, const std::string& lambda_text, const std::string& bound, int ladder,
              unsigned threads, const std::string& out, const std::string& plot) {
  const auto t0 = Clock::now();
  const auto& m = load_model(model);
  const auto lam = lambda_or_rho(m, lambda_text);
  const Rational top = parse_rational(bound);
  std::vector<Rational> bounds;
  if (ladder <= 1) {
    bounds = {top};
  } else {
    // `ladder` rungs, two per decade, ending at the bound.
    const double t = to_double(top);
    bounds = geometric_bounds(std::max(1.0, t / std::pow(10.0, (ladder - 1) / 2.0)), t, 2);
    bounds.back() = top;
  }
  CountOptions co;
  co.threads = threads;
  const auto lad = count_ladder(m, lam, bounds, co);
  const auto fitted = fit_ladder(m, lad);

  RunReport report("count", std::string(m.name()));
  report.parameters() = {{"model", m.name()}, {"lambda", pic_json(lam)}, {"bound", bound}, {"ladder", ladder},
                         {"threads", threads}};
  report.results()["ladder"] = ladder_json(lad);
  report.results()["fit"] = fitted.json;
  if (!out.empty() && !ends_with(out, ".json")) {
    std::ofstream f(out);
    if (!f) throw ResourceError("cannot write " + out);
    write_ladder_csv(lad, f);
  }
  if (!plot.empty()) {
    std::ofstream f(plot);
    if (!f) throw ResourceError("cannot write " + plot);
    emit_plot_data(lad, fitted.a, fitted.b, prediction_for(m, lam), f);
  }
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  emit(report, out);
  return 0;
}

// Reads a "B,N,elapsed_ms" ladder.
CountLadder read_ladder_csv(const VarietyModel& m, const PicardVector& lam, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot read " + path);
  CountLadder lad{m.id, lam, {}};
  std::string line;
  std::getline(in, line);
  if (line.rfind("B,N", 0) != 0) throw DomainError(path + ": expected header B,N,elapsed_ms");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string b, n, ms;
    std::getline(ss, b, ',');
    std::getline(ss, n, ',');
    std::getline(ss, ms, ',');
    lad.rungs.push_back({parse_rational(b), std::stoll(n), ms.empty() ? 0.0 : std::stod(ms)});
  }
  return lad;
}

int cmd_fit(const std::string& model, const std::string& lambda_text, const std::string& in, const std::string& out,
            const std::string& plot) {
  const auto t0 = Clock::now();
  const auto& m = load_model(model);
  const auto lam = lambda_or_rho(m, lambda_text);
  const auto lad = read_ladder_csv(m, lam, in);
  const auto fitted = fit_ladder(m, lad);
  const double prediction = prediction_for(m, lam);
  RunReport report("fit", std::string(m.name()));
  report.parameters() = {{"model", m.name()}, {"lambda", pic_json(lam)}, {"in", in}};
  report.results()["fit"] = fitted.json;
  if (!std::isnan(prediction)) report.results()["prediction"] = prediction;
  if (!plot.empty()) {
    std::ofstream f(plot);
    if (!f) throw ResourceError("cannot write " + plot);
    emit_plot_data(lad, fitted.a, fitted.b, prediction, f);
  }
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  emit(report, out);
  return 0;
}

int cmd_constant(const std::string& model, Int pmax, const std::string& out) {
  const auto t0 = Clock::now();
  const auto& m = load_model(model);
  const auto pc = predicted_constant(m, pmax);
  Json rho = Json::array();
  for (const auto& c : m.components) rho.push_back(c.rho);
  RunReport report("constant", std::string(m.name()));
  report.parameters() = {{"model", m.name()}, {"pmax", pmax}};
  report.results() = {{"model", m.name()},
                      {"arch_density", pc.tamagawa.arch.value.real()},
                      {"euler_partial", pc.tamagawa.euler.partial},
                      {"tail_bound", pc.tamagawa.euler.partial_tail},
                      {"tamagawa", pc.tamagawa.tamagawa},
                      {"rank", m.rank()},
                      {"rho", rho},
                      {"predicted_constant", pc.value},
                      {"predicted_bound", pc.bound},
                      {"euler_complete", pc.tamagawa.euler.complete}};
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  if (!out.empty()) report.write(out);
  std::cout << report.to_json().dump(2) << std::endl;
  return 0;
}

int cmd_verify_denef(const std::string& model, const std::string& primes, int depth, const std::string& out) {
  const auto t0 = Clock::now();
  const auto& m = load_model(model);
  RunReport report("verify-denef", std::string(m.name()));
  report.parameters() = {{"model", m.name()}, {"p", primes}, {"depth", depth}};
  Json rows = Json::array();
  const std::vector<Rational> zero(m.dim, Rational(0));
  for (Int p : parse_primes(primes)) {
    for (int k : {1, 2}) {
      auto s = m.rho().to_real();
      for (auto& x : s) x += k;
      const auto b = brute_padic_fourier(m, p, zero, s, depth);
      const double d = denef_local_factor(m, p, s);
      const double diff = std::abs(b.value - Complex(d));
      const bool pass = diff <= b.error_bound;
      rows.push_back({{"p", p}, {"shift", k}, {"lhs", b.value.real()}, {"rhs", d}, {"bound", b.error_bound},
                      {"pass", pass}});
      report.add_verdict({"A5", pass, diff, b.error_bound,
                          "p=" + std::to_string(p) + " s=rho+" + std::to_string(k)});
    }
  }
  report.results()["rows"] = rows;
  report.results()["pass"] = report.all_pass();
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  if (!out.empty()) report.write(out);
  std::cout << report.to_json().dump(2) << std::endl;
  return report.all_pass() ? 0 : kExitAcceptance;
}

int cmd_verify_charsum(const std::string& primes, const std::string& out) {
  const auto t0 = Clock::now();
  RunReport report("verify-charsum", "");
  report.parameters() = {{"p", primes}};
  Json rows = Json::array();
  for (Int p : parse_primes(primes)) {
    for (int n = 1; n <= 3; ++n) {
      for (int d = 0; d <= 3; ++d) {
        const double expect = charsum_trichotomy(p, n, d);
        double worst = 0;
        for (Int u = 1; u < p; ++u) worst = std::max(worst, std::abs(character_sum(p, u, n, d) - Complex(expect)));
        const bool pass = worst <= 1e-9;
        rows.push_back({{"p", p}, {"n", n}, {"d", d}, {"rhs", expect}, {"max_error", worst}, {"bound", 1e-9},
                        {"pass", pass}});
        report.add_verdict({"A6", pass, worst, 1e-9,
                            "p=" + std::to_string(p) + " n=" + std::to_string(n) + " d=" + std::to_string(d)});
      }
    }
  }
  report.results()["rows"] = rows;
  report.results()["pass"] = report.all_pass();
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  if (!out.empty()) report.write(out);
  std::cout << report.to_json().dump(2) << std::endl;
  return report.all_pass() ? 0 : kExitAcceptance;
}

int cmd_zeta_check(const std::string& model, double s, const std::string& bcut, Int acut, Int pmax, double tol,
                   unsigned threads, const std::string& out) {
  const auto t0 = Clock::now();
  const auto& m = load_model(model);
  CountOptions co;
  co.threads = threads;
  const auto r = poisson_check(m, m.rho(), s, parse_rational(bcut), acut, pmax, co);
  const bool pass = r.diff <= r.combined_bound && r.relative <= tol;
  RunReport report("zeta-check", std::string(m.name()));
  report.parameters() = {{"model", m.name()}, {"s", s},       {"bcut", bcut},
                         {"acut", acut},      {"pmax", pmax}, {"tolerance", tol}};
  report.results() = {{"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"bound", r.combined_bound},
                      {"pass", pass},
                      {"diff", r.diff},
                      {"relative", r.relative},
                      {"lhs_bound", r.lhs_bound},
                      {"rhs_bound", r.rhs_bound},
                      {"a_tail_bound", r.a_tail_bound}};
  report.add_verdict({"A8", pass, r.diff, r.combined_bound, "relative " + std::to_string(r.relative)});
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  if (!out.empty()) report.write(out);
  std::cout << report.to_json().dump(2) << std::endl;
  return pass ? 0 : kExitAcceptance;
}

int cmd_all_acceptance(const std::string& only, unsigned threads, const std::string& out) {
  const auto t0 = Clock::now();
  AcceptanceOptions opts;
  opts.threads = threads;
  RunReport report("all-acceptance", "");
  report.parameters() = {{"only", only}, {"threads", threads}};
  std::vector<std::string> ids;
  if (only.empty()) {
    ids = criterion_ids();
  } else {
    std::stringstream ss(only);
    for (std::string id; std::getline(ss, id, ',');) ids.push_back(id);
  }
  for (const auto& id : ids) {
    const auto r = run_criterion(id, opts);
    std::cout << format_line(r) << std::endl;
    report.results()[r.id] = r.details;
    report.add_verdict({r.id, r.pass, r.elapsed_ms, 0.0, r.summary});
  }
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  if (!out.empty()) report.write(out);
  return report.all_pass() ? 0 : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting points of bounded height on additive-group compactifications"};
  app.set_version_flag("--version", std::string(artifact_version()));
  app.require_subcommand(1);

  std::string model, lambda, bound = "1e6", out, plot, primes = "5,7,11", in, bcut = "1e6", only;
  int ladder = 1, depth = 3;
  unsigned threads = 1;
  Int pmax = 10000, acut = 50, zeta_pmax = 1000;
  double s = 2, tol = 1e-2;

  auto* list = app.add_subcommand("list-models", "JSON description of the catalog");
  list->add_option("--out", out);

  auto* count = app.add_subcommand("count", "Count points of bounded height");
  count->add_option("--model", model)->required();
  count->add_option("--lambda", lambda, "Picard class, comma separated (default rho)");
  count->add_option("--bound", bound);
  count->add_option("--ladder", ladder, "Number of rungs, two per decade, ending at the bound")
      ->check(CLI::Range(1, 64));
  count->add_option("--threads", threads)->check(CLI::Range(1u, 256u));
  count->add_option("--out", out, "CSV, or a JSON report when the name ends in .json");
  count->add_option("--plot", plot, "Plot data file");

  auto* fit = app.add_subcommand("fit", "Fit a ladder read from CSV");
  fit->add_option("--model", model)->required();
  fit->add_option("--lambda", lambda);
  fit->add_option("--in", in)->required();
  fit->add_option("--out", out);
  fit->add_option("--plot", plot);

  auto* constant = app.add_subcommand("constant", "Tamagawa number and predicted leading constant");
  constant->add_option("--model", model)->required();
  constant->add_option("--pmax", pmax)->check(CLI::Range(Int{100}, Int{10000000}));
  constant->add_option("--out", out);

  auto* denef = app.add_subcommand("verify-denef", "Brute-force p-adic integral against Denef's formula");
  denef->add_option("--model", model)->required();
  denef->add_option("--p", primes);
  denef->add_option("--depth", depth)->check(CLI::Range(1, 8));
  denef->add_option("--out", out);

  auto* charsum = app.add_subcommand("verify-charsum", "Character sums against their closed form");
  charsum->add_option("--p", primes);
  charsum->add_option("--out", out);

  auto* zeta = app.add_subcommand("zeta-check", "Poisson identity for the height zeta function");
  zeta->add_option("--model", model)->required();
  zeta->add_option("--s", s);
  zeta->add_option("--bcut", bcut);
  zeta->add_option("--acut", acut)->check(CLI::Range(Int{0}, Int{1000000}));
  zeta->add_option("--pmax", zeta_pmax)->check(CLI::Range(Int{100}, Int{1000000}));
  zeta->add_option("--tol", tol, "Relative tolerance");
  zeta->add_option("--threads", threads)->check(CLI::Range(1u, 256u));
  zeta->add_option("--out", out);

  auto* all = app.add_subcommand("all-acceptance", "Run the acceptance suite");
  all->add_option("--only", only, "Comma separated subset, e.g. A1,A6");
  all->add_option("--threads", threads)->check(CLI::Range(1u, 256u));
  all->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*list) return cmd_list_models(out);
    if (*count) return cmd_count(model, lambda, bound, ladder, threads, out, plot);
    if (*fit) return cmd_fit(model, lambda, in, out, plot);
    if (*constant) return cmd_constant(model, pmax, out);
    if (*denef) return cmd_verify_denef(model, primes, depth, out);
    if (*charsum) return cmd_verify_charsum(primes, out);
    if (*zeta) return cmd_zeta_check(model, s, bcut, acut, zeta_pmax, tol, threads, out);
    if (*all) return cmd_all_acceptance(only, threads, out);
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << '\n';
    return kExitCapability;
  } catch (const ResourceError& e) {
    std::cerr << "resource: " << e.what() << '\n';
    return kExitResource;
  } catch (const CatalogError& e) {
    std::cerr << "catalog: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
