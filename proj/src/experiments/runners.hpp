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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hotspots/conformal/convexity.hpp"
#include "hotspots/conformal/power_series.hpp"
#include "hotspots/experiments/record.hpp"
#include "hotspots/experiments/run.hpp"
#include "hotspots/stochastic/estimators.hpp"

namespace hotspots::experiments::detail {

struct Context {
  const ScenarioConfig& cfg;
  const RunOptions& options;
  std::filesystem::path dir;
  ResultRecord& record;

  void check(const std::string& name, const std::string& invariant, bool pass, const std::string& detail = {});
  void metric(const std::string& name, double value);
  void metric(const std::string& name, double value, double stderr_);
  /// Opens dir/file for writing and records it as an output.
  std::ofstream open(const std::string& file);
  void write_json(const std::string& file, const nlohmann::json& j);
};

/// params[name] with a default; ConfigError on a type mismatch.
template <class T>
T param(const ScenarioConfig& cfg, const char* name, T fallback) {
  if (!cfg.params.contains(name)) return fallback;
  try {
    return cfg.params.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("params.") + name + " has the wrong type");
  }
}

std::vector<Point> point_list(const nlohmann::json& j, const char* what);

conformal::PowerSeriesMap build_map(const DomainSpec& d, int boundary_nodes, double tol);
conformal::Potential make_potential(const PotentialSpec& spec);

std::string csv_row(const std::vector<std::string>& cells);

/// Estimates CSV: scenario_id, start coordinates, r, t, estimate, stderr, N, dt, seed.
std::string estimate_header(int dim);
std::string estimate_row(const ScenarioConfig& cfg, const Eigen::VectorXd& start, double r,
                         const stochastic::SurvivalEstimate& e, double dt);
std::string num(double x);

void run_geometry_check(Context& ctx);
void run_map_build(Context& ctx);
void run_coupling(Context& ctx);
void run_tail(Context& ctx);
void run_survival(Context& ctx);
void run_eig(Context& ctx);
void run_hotspot(Context& ctx);
void run_crosscheck(Context& ctx);

}  // namespace hotspots::experiments::detail
