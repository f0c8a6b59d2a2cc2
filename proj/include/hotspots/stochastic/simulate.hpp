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

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hotspots/geometry/domain.hpp"
#include "hotspots/stochastic/philox.hpp"

namespace hotspots::stochastic {

enum class KillingKind { None, Hyperplane, Curve };

/// Euler scheme for Brownian motion (variance dt per coordinate and step)
/// reflected in the closed unit ball.
struct SimConfig {
  int dimension = 2;
  double dt = 1e-4;
  double max_time = 1.0;
  bool bridge_correction = true;
  /// Hyperplane: killed on x_d = 0. Curve (d = 2): killed on leaving `domain`,
  /// whose gamma1 lies on the unit circle, through gamma2.
  KillingKind killing = KillingKind::Hyperplane;
  std::shared_ptr<const geometry::MixedDomain> domain;
  /// When set, recording stops `run_after_kill` after the killing time;
  /// otherwise paths always run to max_time (the coupling needs them).
  bool stop_at_kill = true;
  double run_after_kill = 0;

  void validate() const;
};

struct RngId {
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
};

struct PathSample {
  std::vector<double> times;
  /// d x n, column k at times[k].
  Eigen::MatrixXd positions;
  std::optional<double> killed_at;
  RngId rng_id;
};

struct KillCheck {
  bool killed = false;
  /// Part of the step survived, in [0, 1].
  double fraction = 1;
};

/// prev_d, next_d are the signed distances to the hyperplane. A sign change
/// kills at the linearly interpolated time; otherwise, with the bridge
/// correction, kills with probability exp(-2 a b / dt) at mid-step. Draws one
/// uniform whenever bridge_correction is set.
KillCheck detect_killing_hyperplane(double prev_d, double next_d, double dt, bool bridge_correction, Philox4x32& rng);
KillCheck detect_killing_hyperplane(const Eigen::VectorXd& prev, const Eigen::VectorXd& next, double dt,
                                    bool bridge_correction, Philox4x32& rng);

/// One path of the Euler scheme, advanced a step at a time without storage.
class BallWalker {
 public:
  BallWalker(const SimConfig& config, const Eigen::VectorXd& start, RngId id);

  /// Advances one step (also after killing when stop_at_kill is false).
  void step();
  const Eigen::VectorXd& position() const { return x_; }
  const Eigen::VectorXd& previous() const { return prev_; }
  double time() const { return t_; }
  bool killed() const { return kill_time_.has_value(); }
  std::optional<double> kill_time() const { return kill_time_; }

 private:
  void check_curve();

  const SimConfig& cfg_;
  Philox4x32 rng_;
  std::normal_distribution<double> normal_;
  double sqrt_dt_;
  Eigen::VectorXd x_, prev_;
  double t_ = 0;
  std::optional<double> kill_time_;
  bool straight_gamma2_ = false;
};

/// Records the path on the grid k*dt up to max_time, or up to the killing
/// time plus run_after_kill when stop_at_kill is set.
PathSample simulate_rbm(const Eigen::VectorXd& start, const SimConfig& config, RngId id);

/// Signed distance to gamma2: positive inside D, negative outside.
double signed_distance_to_gamma2(const geometry::MixedDomain& domain, Point z);

/// Planar Brownian motion in D itself: nearest-point reflection on gamma1,
/// killing on gamma2 (signed-distance interpolation; bridge correction only
/// when gamma2 is a straight segment). A step ending outside D is killed when
/// it is nearer gamma2 than gamma1, corners included.
class DomainWalker {
 public:
  DomainWalker(const geometry::MixedDomain& domain, Point start, double dt, bool bridge_correction, RngId id);

  void step();
  Point position() const { return x_; }
  double time() const { return t_; }
  bool killed() const { return kill_time_.has_value(); }
  std::optional<double> kill_time() const { return kill_time_; }
  /// Killed within 2 sqrt(dt) of a corner.
  bool corner_kill() const { return corner_kill_; }
  /// Steps where one reflection did not return the point to D.
  int projections() const { return projections_; }

 private:
  void kill(double fraction);

  const geometry::MixedDomain& d_;
  Philox4x32 rng_;
  std::normal_distribution<double> normal_;
  double dt_, sqrt_dt_;
  bool bridge_;
  Point x_;
  double t_ = 0;
  std::optional<double> kill_time_;
  bool corner_kill_ = false;
  int projections_ = 0;
};

}  // namespace hotspots::stochastic
