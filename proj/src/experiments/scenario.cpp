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

#include "hotspots/experiments/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "hotspots/geometry/shapes.hpp"

namespace hotspots::experiments {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ScenarioKind, const char*>, 8> kKindNames{{
    {ScenarioKind::GeometryCheck, "GEOMETRY_CHECK"},
    {ScenarioKind::MapBuild, "MAP_BUILD"},
    {ScenarioKind::CouplingRun, "COUPLING_RUN"},
    {ScenarioKind::TailMonotone, "TAIL_MONOTONE"},
    {ScenarioKind::SurvivalField, "SURVIVAL_FIELD"},
    {ScenarioKind::EigSolve, "EIG_SOLVE"},
    {ScenarioKind::HotspotVerify, "HOTSPOT_VERIFY"},
    {ScenarioKind::Crosscheck, "CROSSCHECK"},
}};

const std::pair<spectral::ReferenceCase, const char*> kCaseNames[] = {
    {spectral::ReferenceCase::HalfDiskNeumannArc, "half_disk_neumann_arc"},
    {spectral::ReferenceCase::HalfDiskDirichletArc, "half_disk_dirichlet_arc"},
    {spectral::ReferenceCase::Sector, "sector"},
};

std::vector<double> grid(const json& j, const char* name) {
  if (!j.contains(name)) return {};
  const json& g = j.at(name);
  if (g.is_number()) return {g.get<double>()};
  if (!g.is_array()) throw ConfigError(std::string(name) + " must be a number or an array");
  std::vector<double> out;
  for (const auto& x : g) {
    if (!x.is_number()) throw ConfigError(std::string(name) + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

bool increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

bool needs_domain(ScenarioKind k) {
  return k != ScenarioKind::TailMonotone && k != ScenarioKind::CouplingRun;
}

bool stochastic_kind(ScenarioKind k) {
  return k == ScenarioKind::CouplingRun || k == ScenarioKind::TailMonotone || k == ScenarioKind::SurvivalField ||
         k == ScenarioKind::Crosscheck;
}

PotentialSpec resolve_potential(const json& j) {
  PotentialSpec p;
  p.source = j;
  if (!j.is_object()) throw ConfigError("potential must be an object");
  p.kind = j.value("kind", std::string("constant"));
  if (p.kind == "constant") {
    p.value = j.value("value", 1.0);
    if (!(p.value > 0)) throw ConfigError("constant potential must be positive");
  } else if (p.kind == "map") {
    if (!j.contains("domain")) throw ConfigError("map potential needs a domain");
    p.map_domain = resolve_domain(j.at("domain"));
    p.boundary_nodes = j.value("boundary_nodes", 512);
    p.tol = j.value("tol", 1e-8);
  } else {
    throw ConfigError("unknown potential kind '" + p.kind + "'");
  }
  return p;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw ConfigError("unknown scenario kind '" + name + "'");
}

DomainSpec resolve_domain(const json& spec) {
  DomainSpec d;
  d.source = spec;
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    d.label = spec.value("label", kind);
    if (kind == "reference") {
      const std::string c = spec.at("case").get<std::string>();
      for (const auto& [rc, name] : kCaseNames) {
        if (c == name) d.reference = rc;
      }
      if (!d.reference) throw ConfigError("unknown reference case '" + c + "'");
      d.half_angle = spec.value("half_angle", kPi / 4);
      d.domain = spectral::reference_domain(*d.reference, d.half_angle);
      if (!spec.contains("label")) d.label = c;
    } else if (kind == "disk") {
      const auto& c = spec.value("center", json::array({0.0, 0.0}));
      d.target = conformal::StarTarget::disk({c.at(0).get<double>(), c.at(1).get<double>()},
                                             spec.value("radius", 1.0));
    } else if (kind == "ellipse") {
      d.target = conformal::StarTarget::ellipse(spec.at("a").get<double>(), spec.at("b").get<double>());
    } else {
      d.domain = geometry::domain_from_json(spec);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed domain: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("unusable domain: ") + e.what());
  }
  return d;
}

ScenarioConfig parse_config(const json& j) {
  static const std::set<std::string> kKeys = {"id", "kind", "domain", "domains", "potential", "t_grid", "r_grid",
                                               "N", "dt", "seed", "output", "params", "description"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ScenarioConfig c;
  c.source = j;
  try {
    c.id = j.at("id").get<std::string>();
    if (c.id.empty() || c.id.find_first_of("/\\") != std::string::npos) throw ConfigError("bad scenario id");
    c.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
    if (!j.contains("seed")) throw ConfigError("seed is required");
    const json& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0)) {
      throw ConfigError("seed must be a nonnegative integer");
    }
    c.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("domain") && j.contains("domains")) throw ConfigError("give domain or domains, not both");
    if (j.contains("domain")) c.domains.push_back(resolve_domain(j.at("domain")));
    if (j.contains("domains")) {
      for (const auto& d : j.at("domains")) c.domains.push_back(resolve_domain(d));
    }
    if (needs_domain(c.kind) && c.domains.empty()) throw ConfigError(to_string(c.kind) + " needs a domain");
    if (j.contains("potential")) c.potential = resolve_potential(j.at("potential"));

    c.t_grid = grid(j, "t_grid");
    c.r_grid = grid(j, "r_grid");
    for (double t : c.t_grid) {
      if (!(t > 0) || !std::isfinite(t)) throw ConfigError("t_grid entries must be positive");
    }
    if (!increasing(c.t_grid) || !increasing(c.r_grid)) throw ConfigError("grids must be strictly increasing");
    const bool needs_t = c.kind == ScenarioKind::TailMonotone || c.kind == ScenarioKind::SurvivalField ||
                         c.kind == ScenarioKind::Crosscheck;
    if (needs_t && c.t_grid.empty()) throw ConfigError(to_string(c.kind) + " needs t_grid");
    if (c.kind == ScenarioKind::TailMonotone && c.r_grid.size() < 2) throw ConfigError("TAIL_MONOTONE needs r_grid");
    if (c.kind == ScenarioKind::CouplingRun && c.r_grid.size() != 2) {
      throw ConfigError("COUPLING_RUN needs r_grid = [r1, r2]");
    }
    for (double r : c.r_grid) {
      if (!(r > 0 && r < 1)) throw ConfigError("r_grid entries must lie in (0, 1)");
    }

    if (stochastic_kind(c.kind)) {
      if (!j.contains("N") || !j.contains("dt")) throw ConfigError(to_string(c.kind) + " needs N and dt");
    }
    if (j.contains("N")) {
      if (!j.at("N").is_number_integer() || j.at("N").get<long long>() < 1) throw ConfigError("N must be >= 1");
      c.n = j.at("N").get<std::size_t>();
    }
    c.dt = j.value("dt", 1e-3);
    if (!(c.dt > 0)) throw ConfigError("dt must be positive");
    c.output = j.value("output", c.id);
    if (c.output.empty() || std::filesystem::path(c.output).is_absolute() || c.output.find("..") != std::string::npos) {
      throw ConfigError("output must be a relative path inside the output directory");
    }
    c.params = j.value("params", json::object());
    if (!c.params.is_object()) throw ConfigError("params must be an object");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + file.string() + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace hotspots::experiments
