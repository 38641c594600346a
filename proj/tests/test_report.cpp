// Copyright 2026 The manin-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "manin/acceptance.hpp"
#include "manin/report.hpp"

using namespace manin;

TEST_SUITE("report") {
  TEST_CASE("ladder CSV has a header and one row per rung") {
    const auto& p1 = load_model("P1");
    const auto lad = count_ladder(p1, p1.rho(), {Rational(4), Rational(100)});
    std::ostringstream os;
    write_ladder_csv(lad, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "B,N,elapsed_ms");
    std::getline(is, line);
    CHECK(line.rfind("4,7,", 0) == 0);
    std::getline(is, line);
    CHECK(line.rfind("100,", 0) == 0);
    CHECK_FALSE(std::getline(is, line));
  }

  TEST_CASE("plot data") {
    const auto& p1 = load_model("P1");
    std::ostringstream empty;
    emit_plot_data(CountLadder{ModelId::P1, p1.rho(), {}}, 1, 1, 1.2159, empty);
    CHECK(empty.str().empty());

    const auto lad = count_ladder(p1, p1.rho(), {Rational(10000), Rational(1000000)});
    std::ostringstream os;
    emit_plot_data(lad, 1, 1, 1.2159, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    CHECK(line.find("prediction 1.2159") != std::string::npos);
    double L = 0, y = 0;
    int rows = 0;
    while (is >> L >> y) {
      CHECK(y == doctest::Approx(1.2159).epsilon(0.01));
      ++rows;
    }
    CHECK(rows == 2);
    CHECK(L == doctest::Approx(std::log(1e6)));
  }

  TEST_CASE("reports carry verdicts and stable keys") {
    RunReport r("verify-charsum", "P1");
    r.parameters()["p"] = "5..7";
    r.results()["lhs"] = 1.0;
    r.add_verdict({"A6", true, 1e-12, 1e-9, "ok"});
    CHECK(r.all_pass());
    r.add_verdict({"A6", false, 1.0, 1e-9, "bad"});
    CHECK_FALSE(r.all_pass());
    const auto j = r.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema", "version", "command", "model", "parameters", "results",
                                           "verdicts", "pass", "elapsed_ms"});
    CHECK(j["verdicts"][0]["check"] == "A6");
    CHECK(j["schema"] == kReportSchema);
  }

  TEST_CASE("model description") {
    const auto j = model_json(load_model("BlP2-2"));
    CHECK(j["name"] == "BlP2-2");
    CHECK(j["rank"] == 3);
    CHECK(j["components"][1]["rho"] == 2);
    CHECK(j["centers"].size() == 2);
  }

  TEST_CASE("acceptance registry") {
    CHECK(criterion_ids().size() == 10);
    CHECK_THROWS_AS(run_criterion("A11"), DomainError);
    const auto r = run_criterion("A1");
    CHECK(r.pass);
    CHECK(format_line(r).rfind("A1 PASS", 0) == 0);
  }
}
