// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "manin/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace manin {

std::string_view artifact_version() { return MANIN_VERSION; }

RunReport::RunReport(std::string command, std::string model) : command_(std::move(command)), model_(std::move(model)) {}

bool RunReport::all_pass() const {
  for (const auto& v : verdicts_) {
    if (!v.pass) return false;
  }
  return true;
}

Json RunReport::to_json() const {
  Json j;
  j["schema"] = kReportSchema;
  j["version"] = artifact_version();
  j["command"] = command_;
  j["model"] = model_;
  j["parameters"] = parameters_;
  j["results"] = results_;
  Json verdicts = Json::array();
  for (const auto& v : verdicts_) {
    verdicts.push_back({{"check", v.check}, {"pass", v.pass}, {"value", v.value}, {"bound", v.bound},
                        {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;
  j["pass"] = all_pass();
  j["elapsed_ms"] = elapsed_ms_;
  return j;
}

void RunReport::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write " + path);
  out << to_json().dump(2) << '\n';
}

Json model_json(const VarietyModel& model) {
  Json j;
  j["name"] = model.name();
  j["dim"] = model.dim;
  j["rank"] = model.rank();
  Json comps = Json::array();
  for (const auto& c : model.components) comps.push_back({{"name", c.name}, {"rho", c.rho}});
  j["components"] = comps;
  Json gens = Json::array();
  for (const auto& g : model.generators) {
    Json secs = Json::array();
    for (const auto& s : g.sections) secs.push_back(s.coeffs);
    gens.push_back({{"name", g.name}, {"sections", secs}});
  }
  j["generators"] = gens;
  j["centers"] = model.centers;
  j["small_primes"] = model.small_primes;
  return j;
}

Json ladder_json(const CountLadder& ladder) {
  Json rungs = Json::array();
  for (const auto& r : ladder.rungs) {
    rungs.push_back({{"bound", to_string(r.bound)}, {"count", r.count}, {"elapsed_ms", r.elapsed_ms}});
  }
  return rungs;
}

void write_ladder_csv(const CountLadder& ladder, std::ostream& out) {
  out << "B,N,elapsed_ms\n";
  for (const auto& r : ladder.rungs) {
    out << to_string(r.bound) << ',' << r.count << ',' << std::fixed << std::setprecision(3) << r.elapsed_ms
        << std::defaultfloat << '\n';
  }
}

void emit_plot_data(const CountLadder& ladder, double a, int b, double prediction, std::ostream& out) {
  if (ladder.rungs.empty()) return;
  out << "# log_B normalized_count\n";
  out << "# prediction " << std::setprecision(12) << prediction << '\n';
  for (const auto& r : ladder.rungs) {
    const double B = to_double(r.bound);
    const double L = std::log(B);
    const double norm = static_cast<double>(r.count) / (std::pow(B, a) * std::pow(L, b - 1));
    out << std::setprecision(12) << L << ' ' << norm << '\n';
  }
}

}  // namespace manin
