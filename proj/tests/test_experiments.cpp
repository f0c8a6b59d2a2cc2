// Copyright 2026 The hotspots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "hotspots/experiments/record.hpp"
#include "hotspots/experiments/run.hpp"
#include "hotspots/experiments/scenario.hpp"

using namespace hotspots;
using namespace hotspots::experiments;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hotspots_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json tail_config() {
  return json::parse(R"({
    "id": "tail", "kind": "TAIL_MONOTONE", "r_grid": [0.2, 0.5, 0.8], "t_grid": [0.1, 0.3],
    "N": 3000, "dt": 2e-3, "seed": 9, "params": {"require_separation": false}
  })");
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(parse_config(tail_config()));

  auto j = tail_config();
  j.erase("seed");
  CHECK_THROWS_WITH_AS(parse_config(j), "seed is required", ConfigError);
  j = tail_config();
  j["seed"] = -1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j["N"] = 0;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j["extra"] = 1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j["kind"] = "TAIL";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j.erase("r_grid");
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j["r_grid"] = {0.5, 0.2};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j["r_grid"] = {0.5, 1.2};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = tail_config();
  j["output"] = "../elsewhere";
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  const json eig = {{"id", "e"}, {"kind", "EIG_SOLVE"}, {"seed", 1}};
  CHECK_THROWS_WITH_AS(parse_config(eig), "EIG_SOLVE needs a domain", ConfigError);
  json bad_domain = eig;
  bad_domain["domain"] = {{"kind", "triangle"}};
  CHECK_THROWS_AS(parse_config(bad_domain), ConfigError);
  bad_domain["domain"] = {{"kind", "reference"}, {"case", "square"}};
  CHECK_THROWS_AS(parse_config(bad_domain), ConfigError);
  bad_domain["domain"] = {{"kind", "sector"}, {"half_angle", -1}};
  CHECK_THROWS_AS(parse_config(bad_domain), ConfigError);

  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "broken.json") << "{\"id\": ";
  CHECK_THROWS_AS(load_config(dir / "broken.json"), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);

  const auto c = parse_config(json::parse(R"({"id": "g", "kind": "GEOMETRY_CHECK", "seed": 0,
      "domain": {"kind": "reference", "case": "sector", "half_angle": 0.5}})"));
  REQUIRE(c.domains.size() == 1);
  CHECK(c.domains[0].label == "sector");
  CHECK(c.domains[0].reference == spectral::ReferenceCase::Sector);
  CHECK(c.output == "g");
}

TEST_CASE("content hash is the git blob hash") {
  // printf '{"a":1,"b":[2,3]}' | git hash-object --stdin
  CHECK(content_hash(json::parse(R"({"b": [2, 3], "a": 1})")) == "f33a8f81e4ca4d0f42951a566cba5573682d8645");
  CHECK(content_hash(json::object()) == "9e26dfeeb6e641a33dae4961196235bdb965b21b");
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2) == "2");
  CHECK(format_number(std::nan("")) == "nan");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(u(rng), static_cast<int>(u(rng) * 10));
    const auto s = format_number(x);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
}

TEST_CASE("report: summaries, families and exit codes") {
  ResultRecord ok;
  ok.scenario_id = "a";
  ok.config_hash = std::string(40, '0');
  ok.metrics["tail.x"] = {0.5, 0.01};
  ok.metrics["eig.mu1"] = {3.4, std::nullopt};
  ok.checks.push_back({"c", "m: p", true, ""});
  const auto dir = scratch("report");
  const auto one = emit_report({ok}, dir);
  REQUIRE(one.size() == 1);
  CHECK(one[0].find("a GEOMETRY_CHECK PASS checks 1/1") == 0);
  CHECK(slurp(dir / "metrics_tail.csv") == "scenario_id,metric,value,stderr\na,tail.x,0.5,0.01\n");
  CHECK(slurp(dir / "metrics_eig.csv") == "scenario_id,metric,value,stderr\na,eig.mu1,3.4,\n");
  CHECK(aggregate_exit_code({ok}) == 0);

  ResultRecord bad = ok;
  bad.scenario_id = "b";
  bad.checks.push_back({"d", "m: q", false, "why"});
  CHECK_FALSE(bad.passed());
  CHECK(aggregate_exit_code({ok, bad}) == 1);
  const auto two = emit_report({ok, bad}, dir);
  CHECK(two.size() == 2);
  CHECK(two[1].find("FAIL checks 1/2") != std::string::npos);
  const auto summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary["passed"] == false);
  CHECK(summary["records"][1]["checks"][1]["invariant"] == "m: q");
  CHECK_THROWS(emit_report({}, dir));
}

TEST_CASE("tail sweep writes one row per (r, t) and is byte-identical across thread counts") {
  const auto cfg = parse_config(tail_config());
  const auto d1 = scratch("tail1"), d3 = scratch("tail3");
  const auto r1 = run_scenario(cfg, {d1, 1});
  const auto r3 = run_scenario(cfg, {d3, 3});
  const auto a = slurp(d1 / "tail" / "estimates.csv");
  CHECK(a == slurp(d3 / "tail" / "estimates.csv"));
  CHECK(count_lines(a) == 1 + 3 * 2);
  CHECK(a.rfind("scenario_id,start_x,start_y,r,t,estimate,stderr,N,dt,seed\n", 0) == 0);
  CHECK(r1.config_hash == r3.config_hash);
  CHECK(r1.passed());
  for (const auto& c : r1.checks) CHECK(c.invariant.find(": ") != std::string::npos);

  // d = 3 adds start_z.
  auto j = tail_config();
  j["params"]["dimension"] = 3;
  const auto d = scratch("tail_d3");
  run_scenario(parse_config(j), {d, 2});
  CHECK(slurp(d / "tail" / "estimates.csv").rfind("scenario_id,start_x,start_y,start_z,r,", 0) == 0);
}

TEST_CASE("coupling run with V = 1 keeps the ordering") {
  const auto cfg = parse_config(json::parse(R"({
    "id": "couple", "kind": "COUPLING_RUN", "r_grid": [0.4, 0.9], "N": 10000, "dt": 1e-3, "seed": 4,
    "params": {"zeta": [0.3, 0.8]}
  })"));
  const auto dir = scratch("couple");
  const auto r = run_scenario(cfg, {dir, 2});
  CHECK(r.metrics.at("coupling.ordering_violation_fraction").value < 0.01);
  CHECK(r.passed());
  const auto csv = slurp(dir / "couple" / "coupled.csv");
  CHECK(csv.rfind("path_index,tau,tau_tilde,alpha_tau_tilde,functional_base,functional_coupled,ordering_holds\n", 0) == 0);
  CHECK(count_lines(csv) == 10001);

  // Curve killing refuses a domain without the starlike certificate.
  auto j = cfg.source;
  j["params"]["killing"] = "curve";
  j["domain"] = {{"kind", "half_disk"}, {"dirichlet", "arc"}};
  CHECK_THROWS_AS(run_scenario(parse_config(j), {dir, 1}), ConfigError);
}

TEST_CASE("geometry and hot-spot scenarios") {
  const auto dir = scratch("geo");
  const auto g = run_scenario(parse_config(json::parse(R"({
    "id": "g", "kind": "GEOMETRY_CHECK", "seed": 2, "params": {"arc_checks": 100},
    "domain": {"kind": "half_disk", "dirichlet": "arc", "side": "lower"}
  })")), {dir, 1});
  bool convex = false;
  for (const auto& c : g.checks) convex = convex || (c.name == "symmetrized_convex[half_disk]" && c.pass);
  CHECK(convex);
  CHECK(g.passed());

  const auto h = run_scenario(parse_config(json::parse(R"({
    "id": "h", "kind": "HOTSPOT_VERIFY", "seed": 0, "params": {"h": 0.04, "curves": 4},
    "domain": {"kind": "reference", "case": "half_disk_dirichlet_arc"}
  })")), {dir, 1});
  CHECK(h.metrics.at("hotspot.dist_to_gamma1[half_disk_dirichlet_arc]").value <= 0.04);
  CHECK(h.passed());
  const auto report = json::parse(slurp(dir / "h" / "eigen_half_disk_dirichlet_arc.json"));
  for (const char* key : {"mu1", "residual", "argmax", "dist_to_gamma1", "h"}) CHECK(report.contains(key));
}

TEST_CASE("map scenario writes a loadable map") {
  const auto dir = scratch("map");
  const auto r = run_scenario(parse_config(json::parse(R"({
    "id": "m", "kind": "MAP_BUILD", "seed": 0, "params": {"boundary_nodes": 64, "tol": 1e-12},
    "domain": {"kind": "disk", "center": [0.5, 0], "radius": 2, "label": "disk"}
  })")), {dir, 1});
  CHECK(r.passed());
  const auto m = conformal::map_from_json(json::parse(slurp(dir / "m" / "map_disk.json")));
  CHECK(std::abs(m.eval({0.3, 0.1}) - Complex(0.5 + 0.6, 0.2)) < 1e-12);
}
