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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hotspots/conformal/build.hpp"
#include "hotspots/geometry/domain.hpp"
#include "hotspots/spectral/reference.hpp"
#include "hotspots/types.hpp"

namespace hotspots::experiments {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ScenarioKind {
  GeometryCheck,
  MapBuild,
  CouplingRun,
  TailMonotone,
  SurvivalField,
  EigSolve,
  HotspotVerify,
  Crosscheck,
};

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

/// One entry of "domains". Besides the geometry kinds, "reference" names a
/// spectral reference case and "disk" / "ellipse" are plain map targets.
struct DomainSpec {
  nlohmann::json source;
  std::string label;
  std::optional<geometry::MixedDomain> domain;
  std::optional<spectral::ReferenceCase> reference;
  double half_angle = kPi / 4;
  std::optional<conformal::StarTarget> target;
};

DomainSpec resolve_domain(const nlohmann::json& spec);

/// "constant" {value} or "map" {domain, boundary_nodes, tol}: |f'|^2 of the
/// disk map built for the symmetrized domain.
struct PotentialSpec {
  nlohmann::json source;
  std::string kind = "constant";
  double value = 1;
  std::optional<DomainSpec> map_domain;
  int boundary_nodes = 512;
  double tol = 1e-8;
};

struct ScenarioConfig {
  std::string id;
  ScenarioKind kind = ScenarioKind::GeometryCheck;
  std::vector<DomainSpec> domains;
  PotentialSpec potential;
  std::vector<double> t_grid;
  std::vector<double> r_grid;
  std::size_t n = 1;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  /// Subdirectory of the output root; defaults to id.
  std::string output;
  /// Kind-specific settings, read by the runners.
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json source;
};

/// Throws ConfigError on anything missing, unknown or unresolvable.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& file);

}  // namespace hotspots::experiments
