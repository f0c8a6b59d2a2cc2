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
#include <string>

#include <Eigen/Dense>

#include "hotspots/conformal/convexity.hpp"
#include "hotspots/geometry/domain.hpp"
#include "hotspots/stochastic/simulate.hpp"

namespace hotspots::stochastic {

struct SurvivalEstimate {
  double value = 0;
  double stderr_ = 0;
  std::size_t n = 0;
  Eigen::VectorXd start;
  double t = 0;
  std::string potential;
  /// Paths that reached max_time with the event still undecided (counted as misses).
  std::size_t unresolved = 0;
  /// Paths killed near a corner (direct simulation in D only).
  std::size_t corner_kills = 0;
};

/// Streams used by a run: RngId{seed, stream_offset + i} for path i.
struct RunSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_offset = 0;
};

/// P{ int_0^tau V(B_s) ds > t } with binomial standard error.
SurvivalEstimate functional_tail_estimate(const Eigen::VectorXd& start, const conformal::Potential& v, double t,
                                          std::size_t n, const SimConfig& config, RunSeed seed, int threads = 1);

/// u(f(w)) = P^w{ int_0^tau |f'(B_s)|^2 ds > t } for B in the half-disk.
/// Throws DomainError when f does not send (-1, 1) onto gamma2 and the upper half into D.
SurvivalEstimate survival_via_conformal(const geometry::MixedDomain& domain, const conformal::AnalyticMap& f,
                                        Point w, double t, std::size_t n, const SimConfig& config, RunSeed seed,
                                        int threads = 1);

/// E[ exp(-int_0^t V(B_s) ds); tau > t ] with the sample standard error.
SurvivalEstimate feynman_kac(const Eigen::VectorXd& start, const conformal::Potential& v, double t, std::size_t n,
                             const SimConfig& config, RunSeed seed, int threads = 1);

/// P^z{ tau_D > t } simulated in D itself with DomainWalker.
SurvivalEstimate direct_survival(const geometry::MixedDomain& domain, Point z, double t, std::size_t n, double dt,
                                 bool bridge_correction, RunSeed seed, int threads = 1);

}  // namespace hotspots::stochastic
