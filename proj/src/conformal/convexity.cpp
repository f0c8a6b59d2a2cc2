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

#include "hotspots/conformal/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hotspots::conformal {

double convexity_functional(const AnalyticMap& f, Point z) {
  const Complex d1 = f(z, 1);
  if (std::abs(d1) < 1e-14) throw NumericalError("f' vanishes: critical point of the map");
  return (1.0 + z * f(z, 2) / d1).real();
}

RadialProfile radial_profile_check(const AnalyticMap& f, double theta, const std::vector<double>& r_grid) {
  RadialProfile out;
  const Complex dir = std::polar(1.0, theta);
  out.min_increment = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r_grid.size(); ++j) {
    if (j > 0 && !(r_grid[j] > r_grid[j - 1])) throw DomainError("radius grid must be strictly increasing");
    out.profile.push_back(r_grid[j] * std::abs(f(r_grid[j] * dir, 1)));
    if (j > 0) out.min_increment = std::min(out.min_increment, out.profile[j] - out.profile[j - 1]);
  }
  if (out.profile.size() < 2) out.min_increment = 0;
  out.monotone = out.min_increment >= -1e-8;
  return out;
}

std::vector<double> interior_radii(int n) {
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = (j + 1.0) / (n + 1.0);
  return r;
}

Potential Potential::constant_value(double c) {
  if (!(c > 0)) throw DomainError("potential must be positive");
  Potential v;
  v.name = c == 1 ? "one" : "constant";
  v.constant = c;
  v.value = [c](const Eigen::Ref<const Eigen::VectorXd>&) { return c; };
  verify_admissible(v);
  return v;
}

bool verify_admissible(Potential& v, int rays, int radii) {
  const int d = std::max(v.dimension, 2);
  const auto r = interior_radii(radii);
  double min_inc = std::numeric_limits<double>::infinity();
  bool positive = true;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < rays; ++k) {
    const double theta = rays == 1 ? kPi / 2 : kPi * k / (rays - 1);
    double prev = 0;
    for (int j = 0; j < radii; ++j) {
      x[0] = r[j] * std::cos(theta);
      x[d - 1] = r[j] * std::sin(theta);
      const double val = v(x);
      positive = positive && val > 0;
      const double q = r[j] * r[j] * val;
      if (j > 0) min_inc = std::min(min_inc, q - prev);
      prev = q;
    }
  }
  v.admissible = positive && min_inc >= -1e-12;
  v.strict = positive && min_inc > 0;
  v.warning.clear();
  if (!positive) v.warning = "potential is not positive on the sampled rays";
  else if (!v.admissible) v.warning = "r^2 V(r zeta) decreases on a sampled ray";
  return v.admissible;
}

Potential potential_from_map(const AnalyticMap& f, std::string name, int rays, int radii) {
  Potential v;
  v.name = std::move(name);
  v.dimension = 2;
  v.value = [f](const Eigen::Ref<const Eigen::VectorXd>& x) { return std::norm(f(Complex(x[0], x[1]), 1)); };
  verify_admissible(v, rays, radii);
  return v;
}

}  // namespace hotspots::conformal
