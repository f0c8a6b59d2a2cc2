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

#include "hotspots/experiments/record.hpp"
#include "hotspots/experiments/scenario.hpp"

namespace hotspots::experiments {

struct RunOptions {
  std::filesystem::path out_root = ".";
  int threads = 1;
};

/// Runs the module pipeline for config.kind and writes its CSV/JSON files
/// under out_root/config.output. Check failures are recorded, not thrown.
ResultRecord run_scenario(const ScenarioConfig& config, const RunOptions& options);

}  // namespace hotspots::experiments
