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

#include "hotspots/conformal/corner_map.hpp"

#include <cmath>
#include <stdexcept>

namespace hotspots::conformal {

CornerMap::CornerMap(Point q0, Point q1, double gamma, Point reference)
    : q0_(q0), q1_(q1), gamma_(gamma), reference_(reference) {
  if (!(gamma > 0) || !(gamma <= 1 + 1e-12)) throw DomainError("corner exponent must lie in (0, 1]");
  if (std::abs(q0 - q1) == 0 || reference == q0 || reference == q1) throw DomainError("degenerate corner map");
  const Complex w = (reference - q0) / (reference - q1);
  rot_ = 1.0 / w;
}

Complex CornerMap::forward(Complex z) const {
  const Complex s = std::pow(rot_ * (z - q0_) / (z - q1_), 1.0 / gamma_);
  return (s - 1.0) / (s + 1.0);
}

Complex CornerMap::inverse(Complex u, int order) const {
  const Complex s = (1.0 + u) / (1.0 - u);
  const Complex w = std::pow(s, gamma_) / rot_;
  const Complex q = q0_ - q1_;
  if (order == 0) return (q0_ - q1_ * w) / (1.0 - w);
  const Complex s1 = 2.0 / ((1.0 - u) * (1.0 - u));
  const Complex w1 = gamma_ * w / s;
  const Complex z1 = q / ((1.0 - w) * (1.0 - w));
  if (order == 1) return z1 * w1 * s1;
  const Complex s2 = 4.0 / ((1.0 - u) * (1.0 - u) * (1.0 - u));
  const Complex w2 = gamma_ * (gamma_ - 1) * w / (s * s);
  const Complex z2 = 2.0 * q / ((1.0 - w) * (1.0 - w) * (1.0 - w));
  return z2 * (w1 * s1) * (w1 * s1) + z1 * (w2 * s1 * s1 + w1 * s2);
}

nlohmann::json corner_map_to_json(const CornerMap& m) {
  return {{"q0", {m.q0().real(), m.q0().imag()}},
          {"q1", {m.q1().real(), m.q1().imag()}},
          {"gamma", m.gamma()},
          {"reference", {m.reference().real(), m.reference().imag()}}};
}

CornerMap corner_map_from_json(const nlohmann::json& j) {
  auto pt = [&](const char* k) { return Point{j.at(k).at(0).get<double>(), j.at(k).at(1).get<double>()}; };
  return CornerMap(pt("q0"), pt("q1"), j.at("gamma").get<double>(), pt("reference"));
}

}  // namespace hotspots::conformal
