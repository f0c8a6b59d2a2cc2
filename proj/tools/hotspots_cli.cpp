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

// hotspots_cli <subcommand> --config <file> --out <dir> [--threads n]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad arguments or
// config, 3 numerical failure. HOTSPOTS_OUT_DIR, when set, replaces --out.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hotspots/experiments/record.hpp"
#include "hotspots/experiments/run.hpp"
#include "hotspots/experiments/scenario.hpp"

namespace ex = hotspots::experiments;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

const std::pair<const char*, const char*> kCommands[] = {
    {"check-geometry", "GEOMETRY_CHECK"}, {"build-map", "MAP_BUILD"},
    {"couple", "COUPLING_RUN"},           {"tail", "TAIL_MONOTONE"},
    {"survival", "SURVIVAL_FIELD"},       {"eig", "EIG_SOLVE"},
    {"verify-hotspots", "HOTSPOT_VERIFY"}, {"crosscheck", "CROSSCHECK"},
};

int run(const std::string& kind, const std::string& config_file, std::string out, int threads) {
  std::ifstream in(config_file);
  if (!in) throw ex::ConfigError("cannot open config " + config_file);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ex::ConfigError(config_file + ": " + e.what());
  }
  if (j.is_object() && !j.contains("kind")) j["kind"] = kind;
  const auto config = ex::parse_config(j);
  if (ex::to_string(config.kind) != kind) {
    throw ex::ConfigError("config kind " + ex::to_string(config.kind) + " does not match subcommand (" + kind + ")");
  }
  if (const char* env = std::getenv("HOTSPOTS_OUT_DIR"); env && *env) out = env;

  const auto record = ex::run_scenario(config, {out, threads});
  const std::vector<ex::ResultRecord> records{record};
  for (const auto& line : ex::emit_report(records, std::filesystem::path(out) / config.output)) {
    std::cout << line << '\n';
  }
  for (const auto& c : record.checks) {
    if (!c.pass) std::cout << "  failed " << c.name << " (" << c.invariant << ") " << c.detail << '\n';
  }
  return ex::aggregate_exit_code(records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner for the mixed Dirichlet-Neumann hot-spots experiments"};
  app.require_subcommand(1);
  std::string config, out;
  int threads = 1;
  for (const auto& [name, kind] : kCommands) {
    auto* sub = app.add_subcommand(name, std::string("run a ") + kind + " scenario");
    sub->add_option("--config", config, "scenario JSON file")->required();
    sub->add_option("--out", out, "output directory")->required();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  std::string kind;
  for (const auto& [name, k] : kCommands) {
    if (app.got_subcommand(name)) kind = k;
  }
  try {
    return run(kind, config, out, threads);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const hotspots::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}
