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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hotspots/experiments/scenario.hpp"

namespace hotspots::experiments {

struct Metric {
  double value = 0;
  std::optional<double> stderr_;
};

struct CheckResult {
  std::string name;
  /// Module invariant the check instantiates, "module: property".
  std::string invariant;
  bool pass = false;
  std::string detail;
};

struct ResultRecord {
  std::string scenario_id;
  ScenarioKind kind = ScenarioKind::GeometryCheck;
  std::string timestamp;
  std::string config_hash;
  /// Keyed "family.name"; the family picks the report CSV.
  std::map<std::string, Metric> metrics;
  std::vector<CheckResult> checks;
  std::vector<std::string> outputs;

  bool passed() const;
};

/// git blob hash (SHA-1 of "blob <size>\0" + content) of the compact config dump.
std::string content_hash(const nlohmann::json& config);

/// Shortest round-trip decimal form; fixed bytes for fixed input.
std::string format_number(double x);

std::string utc_timestamp();

nlohmann::json record_to_json(const ResultRecord& record);

/// Writes summary.json and one metrics_<family>.csv per metric family into dir.
/// Returns one summary line per record.
std::vector<std::string> emit_report(const std::vector<ResultRecord>& records, const std::filesystem::path& dir);

/// 0 when every check of every record passed, 1 otherwise.
int aggregate_exit_code(const std::vector<ResultRecord>& records);

}  // namespace hotspots::experiments
