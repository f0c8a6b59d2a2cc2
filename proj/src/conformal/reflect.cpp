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

#include "hotspots/conformal/reflect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hotspots::conformal {

ReflectedMap::ReflectedMap(AnalyticMap upper, geometry::Circle circle)
    : upper_(std::move(upper)), circle_(circle) {}

Complex ReflectedMap::lower(Complex z, int order) const {
  const double r2 = circle_.radius * circle_.radius;
  const Complex d = std::conj(upper_(std::conj(z), 0)) - std::conj(circle_.center);
  if (order == 0) return circle_.center + r2 / d;
  const Complex g1 = std::conj(upper_(std::conj(z), 1));
  if (order == 1) return -r2 * g1 / (d * d);
  const Complex g2 = std::conj(upper_(std::conj(z), 2));
  return -r2 * g2 / (d * d) + 2.0 * r2 * g1 * g1 / (d * d * d);
}

Complex ReflectedMap::eval(Complex z, int order) const {
  return z.imag() >= 0 ? upper_(z, order) : lower(z, order);
}

SeamReport seam_report(const ReflectedMap& map, int seam_points) {
  SeamReport out;
  for (int j = 0; j < seam_points; ++j) {
    const Complex x{-1.0 + (2.0 * j + 1) / seam_points, 0};
    const double gap = std::abs(map.eval(x, 0) - map.lower(x, 0));
    const double jump = std::abs(map.eval(x, 1) - map.lower(x, 1));
    // NaN from a branch through the inversion center must not pass as small.
    out.value_gap = std::isnan(gap) ? gap : std::max(out.value_gap, gap);
    out.derivative_jump = std::isnan(jump) ? jump : std::max(out.derivative_jump, jump);
    if (std::isnan(gap) || std::isnan(jump)) break;
  }
  return out;
}

ReflectedMap schwarz_reflect(AnalyticMap upper, const geometry::Circle& circle, double tol, int seam_points) {
  ReflectedMap map(std::move(upper), circle);
  const SeamReport r = seam_report(map, seam_points);
  if (!(r.value_gap <= tol)) {
    throw NumericalError("the map does not send (-1, 1) into the reflection circle (gap " +
                         std::to_string(r.value_gap) + ")");
  }
  if (!(r.derivative_jump <= tol)) {
    throw NumericalError("derivative jump " + std::to_string(r.derivative_jump) + " across the seam");
  }
  return map;
}

}  // namespace hotspots::conformal
