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

#include "hotspots/conformal/power_series.hpp"
#include "hotspots/geometry/curve.hpp"

namespace hotspots::conformal {

/// f on the closed upper half of U, z0 + r^2 / conj(f(conj z) - z0) below it.
class ReflectedMap {
 public:
  ReflectedMap(AnalyticMap upper, geometry::Circle circle);

  Complex eval(Complex z, int order = 0) const;
  Complex operator()(Complex z, int order) const { return eval(z, order); }
  /// Value and derivatives of the lower branch, also at points of (-1, 1).
  Complex lower(Complex z, int order) const;
  const geometry::Circle& circle() const { return circle_; }

 private:
  AnalyticMap upper_;
  geometry::Circle circle_;
};

struct SeamReport {
  /// max over seam points of |f(x) - sigma(f(x))|.
  double value_gap = 0;
  /// max over seam points of |f'(x+) - f'(x-)|.
  double derivative_jump = 0;
};

/// Compares both branches at x_j = -1 + (2j + 1) / n.
SeamReport seam_report(const ReflectedMap& map, int seam_points = 100);

/// Throws NumericalError when f(-1, 1) leaves the circle or the derivatives
/// of the two branches differ by more than `tol` at a seam point.
ReflectedMap schwarz_reflect(AnalyticMap upper, const geometry::Circle& circle, double tol = 1e-6,
                             int seam_points = 100);

}  // namespace hotspots::conformal
