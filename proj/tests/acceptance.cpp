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

// Runs the acceptance scenarios and prints one PASS/FAIL line per criterion.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hotspots/experiments/record.hpp"
#include "hotspots/experiments/run.hpp"
#include "hotspots/experiments/scenario.hpp"

namespace ex = hotspots::experiments;

namespace {

struct Part {
  std::string scenario;
  /// Check-name prefixes that count for the criterion; empty takes all.
  std::vector<std::string> checks;
};

struct Criterion {
  std::string name;
  std::vector<Part> parts;
  /// Wall-clock budget over all parts, seconds; 0 for none.
  double budget = 0;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {"eigen-oracle agreement", {{"eigen_oracles", {"oracle_agreement", "eigen_residual", "runtime"}}}},
      {"hot-spot localization", {{"hotspots", {"hotspot_on_gamma1", "hotspot_at_maximizer"}}}},
      {"monotonicity along curves", {{"hotspots", {"curve_monotonicity"}}}},
      {"pathwise coupling inequality",
       {{"coupling_constant", {"ordering", "coupling_invariants"}},
        {"coupling_lens_potential", {"ordering", "coupling_invariants"}},
        {"killing_half_disk", {"killing_order", "coupling_invariants"}},
        {"killing_sector", {"killing_order", "coupling_invariants"}}},
       300},
      {"tail monotonicity in r", {{"tail_d2", {}}, {"tail_d3", {}}}},
      {"conformal maps", {{"map_disk", {}}, {"map_ellipse", {}}, {"map_symmetrized", {}}}},
      {"geometry", {{"geometry", {}}}},
      {"cross-method consistency", {{"crosscheck", {}}}},
  };
  return c;
}

bool selected(const ex::CheckResult& c, const std::vector<std::string>& prefixes) {
  if (prefixes.empty()) return true;
  for (const auto& p : prefixes) {
    if (c.name.rfind(p, 0) == 0) return true;
  }
  return false;
}

struct Outcome {
  std::optional<ex::ResultRecord> record;
  std::string error;
  double seconds = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string dir = HOTSPOTS_ACCEPTANCE_DIR;
  std::string out = "acceptance_out";
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<int> only;
  app.add_option("--scenarios", dir, "directory of acceptance scenario files");
  app.add_option("--out", out, "output directory");
  app.add_option("--threads", threads)->check(CLI::PositiveNumber);
  app.add_option("--only", only, "criterion numbers to run (1-based)");
  CLI11_PARSE(app, argc, argv);

  std::map<std::string, Outcome> runs;
  const auto run = [&](const std::string& id) -> const Outcome& {
    auto it = runs.find(id);
    if (it != runs.end()) return it->second;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o.record = ex::run_scenario(ex::load_config(std::filesystem::path(dir) / (id + ".json")), {out, threads});
      ex::emit_report({*o.record}, std::filesystem::path(out) / o.record->scenario_id);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return runs.emplace(id, std::move(o)).first->second;
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(k + 1)) == only.end()) continue;
    const auto& c = criteria()[k];
    bool pass = true;
    int counted = 0;
    double seconds = 0;
    std::string detail;
    for (const auto& part : c.parts) {
      const auto& o = run(part.scenario);
      seconds += o.seconds;
      if (!o.record) {
        pass = false;
        detail += " " + part.scenario + ": error: " + o.error + ";";
        continue;
      }
      for (const auto& check : o.record->checks) {
        if (!selected(check, part.checks)) continue;
        ++counted;
        if (!check.pass) {
          pass = false;
          detail += " " + part.scenario + ": " + check.name + " " + check.detail + ";";
        }
      }
    }
    if (counted == 0) pass = false;
    if (c.budget > 0 && seconds > c.budget) {
      pass = false;
      detail += " over the " + ex::format_number(c.budget) + " s budget;";
    }
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " " << k + 1 << " " << c.name << " (" << counted << " checks, "
              << static_cast<int>(seconds + 0.5) << " s)" << detail << std::endl;
  }
  return all ? 0 : 1;
}
