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

#include "hotspots/experiments/run.hpp"

#include "hotspots/geometry/symmetrize.hpp"
#include "hotspots/stochastic/estimators.hpp"
#include "runners.hpp"

namespace hotspots::experiments {

namespace detail {

using nlohmann::json;

void Context::check(const std::string& name, const std::string& invariant, bool pass, const std::string& detail) {
  record.checks.push_back({name, invariant, pass, detail});
}

void Context::metric(const std::string& name, double value) { record.metrics[name] = {value, std::nullopt}; }

void Context::metric(const std::string& name, double value, double stderr_) { record.metrics[name] = {value, stderr_}; }

std::ofstream Context::open(const std::string& file) {
  std::ofstream out(dir / file, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / file).string());
  record.outputs.push_back(file);
  return out;
}

void Context::write_json(const std::string& file, const json& j) { open(file) << j.dump(2) << '\n'; }

std::vector<Point> point_list(const json& j, const char* what) {
  std::vector<Point> out;
  try {
    for (const auto& p : j) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  } catch (const json::exception&) {
    throw ConfigError(std::string(what) + " must be a list of [x, y] pairs");
  }
  if (out.empty()) throw ConfigError(std::string(what) + " is empty");
  return out;
}

conformal::PowerSeriesMap build_map(const DomainSpec& d, int boundary_nodes, double tol) {
  if (d.target) return conformal::build_disk_map(*d.target, boundary_nodes, tol);
  try {
    return conformal::build_disk_map(geometry::symmetrize_domain(*d.domain), boundary_nodes, tol);
  } catch (const DomainError& e) {
    throw ConfigError("no disk map for domain '" + d.label + "': " + e.what());
  }
}

conformal::Potential make_potential(const PotentialSpec& spec) {
  if (spec.kind == "constant") return conformal::Potential::constant_value(spec.value);
  const auto map = build_map(*spec.map_domain, spec.boundary_nodes, spec.tol);
  return conformal::potential_from_map(map, "|f'|^2[" + spec.map_domain->label + "]");
}

std::string num(double x) { return format_number(x); }

/// Estimates CSV: start coordinates, then r, t, estimate, stderr, N, dt, seed.
std::string estimate_row(const ScenarioConfig& cfg, const Eigen::VectorXd& start, double r,
                         const stochastic::SurvivalEstimate& e, double dt) {
  std::vector<std::string> cells{cfg.id};
  for (Eigen::Index k = 0; k < start.size(); ++k) cells.push_back(num(start[k]));
  for (const auto& c : {num(r), num(e.t), num(e.value), num(e.stderr_), std::to_string(e.n), num(dt),
                        std::to_string(cfg.seed)}) {
    cells.push_back(c);
  }
  return csv_row(cells);
}

std::string estimate_header(int dim) {
  std::string h = "scenario_id,start_x,start_y";
  if (dim >= 3) h += ",start_z";
  for (int k = 3; k < dim; ++k) h += ",start_" + std::to_string(k + 1);
  return h + ",r,t,estimate,stderr,N,dt,seed\n";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + '\n';
}

}  // namespace detail

ResultRecord run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  if (options.threads < 1) throw ConfigError("threads must be >= 1");
  ResultRecord record;
  record.scenario_id = config.id;
  record.kind = config.kind;
  record.timestamp = utc_timestamp();
  record.config_hash = content_hash(config.source);

  detail::Context ctx{config, options, options.out_root / config.output, record};
  std::filesystem::create_directories(ctx.dir);
  switch (config.kind) {
    case ScenarioKind::GeometryCheck: detail::run_geometry_check(ctx); break;
    case ScenarioKind::MapBuild: detail::run_map_build(ctx); break;
    case ScenarioKind::CouplingRun: detail::run_coupling(ctx); break;
    case ScenarioKind::TailMonotone: detail::run_tail(ctx); break;
    case ScenarioKind::SurvivalField: detail::run_survival(ctx); break;
    case ScenarioKind::EigSolve: detail::run_eig(ctx); break;
    case ScenarioKind::HotspotVerify: detail::run_hotspot(ctx); break;
    case ScenarioKind::Crosscheck: detail::run_crosscheck(ctx); break;
  }
  return record;
}

}  // namespace hotspots::experiments
