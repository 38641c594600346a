// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "manin/report.hpp"

namespace manin {

struct AcceptanceOptions {
  unsigned threads = 1;
};

struct CriterionResult {
  std::string id;  // "A1".."A10"
  bool pass = false;
  std::string summary;
  Json details = Json::object();
  double elapsed_ms = 0;
};

std::vector<std::string> criterion_ids();

/// Runs one criterion; unknown ids raise DomainError.
CriterionResult run_criterion(std::string_view id, const AcceptanceOptions& opts = {});

/// Runs every criterion in order, printing "A<k> PASS|FAIL summary" lines.
std::vector<CriterionResult> run_acceptance(std::ostream& log, const AcceptanceOptions& opts = {});

std::string format_line(const CriterionResult& r);

// Independent oracles shared with the unit tests.

/// The integral of psi(u p^{-nd} t^d) over the units: 1 - 1/p, -1/p or 0.
double charsum_trichotomy(Int p, int n, int d);

/// Anticanonical height of a primitive point (Z, X, ...) from explicit
/// coordinate formulas, independent of the heights module.
Int oracle_rho_height(const VarietyModel& model, std::span<const Int> coords);

/// Counts primitive points with Z >= 1 and oracle height <= B by scanning
/// the box max|coords| <= R, where R is large enough to contain them all.
Int oracle_box_count(const VarietyModel& model, Int B);

}  // namespace manin
