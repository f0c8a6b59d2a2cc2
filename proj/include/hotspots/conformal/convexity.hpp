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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hotspots/conformal/power_series.hpp"

namespace hotspots::conformal {

/// Re(1 + z f''(z) / f'(z)). Throws NumericalError where f' vanishes.
double convexity_functional(const AnalyticMap& f, Point z);

struct RadialProfile {
  bool monotone = true;
  double min_increment = 0;
  std::vector<double> profile;
};

/// r |f'(r e^{i theta})| over an increasing grid; monotone iff min_increment >= -1e-8.
RadialProfile radial_profile_check(const AnalyticMap& f, double theta, const std::vector<double>& r_grid);

/// j / (n + 1) for j = 1..n.
std::vector<double> interior_radii(int n);

/// V > 0 on the closed upper half-ball. `admissible` records that r^2 V(r zeta)
/// was observed nondecreasing on the sampled rays; `strict` that it increased.
struct Potential {
  using Evaluator = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

  std::string name;
  Evaluator value;
  /// 0 when any dimension works.
  int dimension = 0;
  std::optional<double> constant;
  bool admissible = false;
  bool strict = false;
  std::string warning;

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return constant ? *constant : value(x);
  }

  static Potential constant_value(double c);
};

/// V(x, y) = |f'(x + iy)|^2, with the admissibility flag verified on `rays`
/// directions in [0, pi] and `radii` interior radii.
Potential potential_from_map(const AnalyticMap& f, std::string name = "conformal", int rays = 32, int radii = 64);

/// Samples r^2 V(r zeta) in the plane and sets the flags. Returns `admissible`.
bool verify_admissible(Potential& v, int rays = 32, int radii = 64);

}  // namespace hotspots::conformal
