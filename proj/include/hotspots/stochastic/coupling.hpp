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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hotspots/conformal/convexity.hpp"
#include "hotspots/geometry/domain.hpp"
#include "hotspots/stochastic/simulate.hpp"

namespace hotspots::stochastic {

/// Start points r1*zeta and r2*zeta with 0 < r1 <= r2 < 1/|zeta| and zeta_d > 0.
struct CouplingSpec {
  Eigen::VectorXd zeta;
  double r1 = 0;
  double r2 = 0;

  void validate() const;
};

/// B~_u = B(alpha_u) / M(alpha_u) with M_t = max(r1/r2, sup_{s<=t} |B_s|),
/// A_t = int_0^t M_s^-2 ds and alpha = A^{-1}.
struct CoupledSample {
  std::vector<double> base_times;
  /// Per base grid point.
  Eigen::VectorXd M;
  Eigen::VectorXd A;
  /// B~ on its own grid u_m = m*dt, and alpha(u_m).
  std::vector<double> coupled_times;
  Eigen::MatrixXd coupled;
  std::vector<double> alpha;
  /// B_k / M_k at u = A_k; tau~ and the coupled functional are taken here.
  std::vector<double> vertex_times;
  Eigen::MatrixXd vertex_image;
  std::optional<double> tau;
  std::optional<double> tau_tilde;
  double alpha_tau_tilde = 0;
  double functional_base = 0;
  double functional_coupled = 0;
  bool potential_admissible = false;
  /// The base path ended before tau or before alpha(tau~).
  bool truncated = false;
  /// Domain used for curve killing, if any.
  const geometry::MixedDomain* killing_domain = nullptr;

  /// Piecewise-linear inverse of A; throws NumericalError outside [0, A_end].
  double alpha_at(double u) const;
};

/// Killing time along a recorded path from sign changes (no bridge correction).
std::optional<double> first_killing_time(const std::vector<double>& times, const Eigen::MatrixXd& positions,
                                         const SimConfig& config);

/// Trapezoid rule of V along the path up to `until` (interpolated last piece).
double path_functional(const std::vector<double>& times, const Eigen::MatrixXd& positions,
                       const conformal::Potential& v, double until);

CoupledSample scaling_couple(const PathSample& base, const CouplingSpec& spec, const conformal::Potential& v,
                             const SimConfig& config);

/// Simulates the base path from r1*zeta, extending it until both killing
/// times are resolved or `max_time_cap` is reached, and couples it.
CoupledSample run_coupled(const CouplingSpec& spec, const conformal::Potential& v, SimConfig config, RngId id,
                          double max_time_cap = 64);

struct OrderingCheck {
  bool holds = false;
  double slack = 0;
};

/// functional_base <= functional_coupled + tol. Requires an admissible potential.
OrderingCheck coupled_ordering_check(const CoupledSample& sample, double tol);

/// tau <= alpha(tau~) + tol and alpha(tau~) <= tau~ + tol. The certificate
/// proves U \ D starlike about the origin; the sample must use curve killing
/// on the certified domain.
bool killing_order_check(const CoupledSample& sample, const geometry::StarlikeCertificate& certificate, double tol);

}  // namespace hotspots::stochastic
