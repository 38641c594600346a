// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "manin/acceptance.hpp"

int main() {
  const auto results = manin::run_acceptance(std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
