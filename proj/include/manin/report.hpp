// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "manin/catalog.hpp"
#include "manin/enumeration.hpp"

namespace manin {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
std::string_view artifact_version();

/// One checked statement: which criterion or invariant, the measured value,
/// the allowed bound, and the outcome.
struct Verdict {
  std::string check;
  bool pass;
  double value;
  double bound;
  std::string detail;
};

class RunReport {
 public:
  RunReport(std::string command, std::string model);

  Json& parameters() { return parameters_; }
  Json& results() { return results_; }
  void add_verdict(Verdict v) { verdicts_.push_back(std::move(v)); }
  void set_elapsed_ms(double ms) { elapsed_ms_ = ms; }

  const std::vector<Verdict>& verdicts() const { return verdicts_; }
  bool all_pass() const;
  Json to_json() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  std::string model_;
  Json parameters_ = Json::object();
  Json results_ = Json::object();
  std::vector<Verdict> verdicts_;
  double elapsed_ms_ = 0;
};

Json model_json(const VarietyModel& model);
Json ladder_json(const CountLadder& ladder);

/// Header "B,N,elapsed_ms", then one row per rung.
void write_ladder_csv(const CountLadder& ladder, std::ostream& out);

/// Rows "log B  N / (B^a (log B)^{b-1})" under a header comment carrying the
/// prediction; nothing at all for an empty ladder.
void emit_plot_data(const CountLadder& ladder, double a, int b, double prediction, std::ostream& out);

}  // namespace manin
