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

#include <nlohmann/json.hpp>

#include "hotspots/types.hpp"

namespace hotspots::conformal {

/// P(z) = (s - 1) / (s + 1), s = (kappa e^{-i delta} (z - q0) / (z - q1))^{1/gamma}.
/// Opens the corners q0, q1 of interior angle pi*gamma so a region bounded by
/// two circular arcs through q0 and q1 goes onto the unit disk, with q0 -> -1,
/// q1 -> 1 and the reference point -> 0.
class CornerMap {
 public:
  CornerMap(Point q0, Point q1, double gamma, Point reference);

  Complex forward(Complex z) const;
  /// P^{-1} and its first two derivatives.
  Complex inverse(Complex u, int order = 0) const;

  Point q0() const { return q0_; }
  Point q1() const { return q1_; }
  double gamma() const { return gamma_; }
  Point reference() const { return reference_; }

 private:
  Point q0_, q1_;
  double gamma_;
  Point reference_;
  Complex rot_;  // kappa e^{-i delta}
};

nlohmann::json corner_map_to_json(const CornerMap& m);
CornerMap corner_map_from_json(const nlohmann::json& j);

}  // namespace hotspots::conformal
