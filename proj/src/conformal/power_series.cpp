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

#include "hotspots/conformal/power_series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hotspots::conformal {

using nlohmann::json;

PowerSeriesMap::PowerSeriesMap(Eigen::VectorXcd coefficients, MapNormalization normalization,
                               std::optional<geometry::Circle> symmetry, std::optional<CornerMap> outer)
    : c_(std::move(coefficients)), normalization_(normalization), symmetry_(symmetry), outer_(outer) {
  if (c_.size() < 2 || c_[1] == Complex(0, 0)) throw DomainError("power series map needs c1 != 0");
  active_ = c_.size();
  while (active_ > 2 && c_[active_ - 1] == Complex(0, 0)) --active_;
}

Complex PowerSeriesMap::eval(Complex z, int order) const {
  if (!outer_) return series(z, order);
  const Complex u = series(z, 0);
  if (order == 0) return outer_->inverse(u, 0);
  const Complex u1 = series(z, 1);
  if (order == 1) return outer_->inverse(u, 1) * u1;
  return outer_->inverse(u, 2) * u1 * u1 + outer_->inverse(u, 1) * series(z, 2);
}

Complex PowerSeriesMap::series(Complex z, int order) const {
  if (std::abs(z) > 1 + 1e-12) throw SingularInputError("power series evaluated outside the closed unit disk");
  if (order < 0 || order > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
  Complex acc = 0;
  for (Eigen::Index k = active_ - 1; k >= order; --k) {
    double w = 1;
    for (int j = 0; j < order; ++j) w *= static_cast<double>(k - j);
    acc = acc * z + w * c_[k];
  }
  return acc;
}

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }
Complex complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

json map_to_json(const PowerSeriesMap& map) {
  json coeffs = json::array();
  for (Eigen::Index k = 0; k < map.coefficients().size(); ++k) coeffs.push_back(complex_to_json(map.coefficients()[k]));
  json out{{"coefficients", coeffs},
           {"normalization",
            {{"value_at_zero", complex_to_json(map.normalization().value_at_zero)},
             {"derivative_arg", map.normalization().derivative_arg}}},
           {"diagnostics",
            {{"nodes", map.diagnostics.nodes},
             {"iterations", map.diagnostics.iterations},
             {"boundary_error", map.diagnostics.boundary_error},
             {"tail_ratio", map.diagnostics.tail_ratio}}}};
  if (map.outer()) out["outer"] = corner_map_to_json(*map.outer());
  if (map.symmetry()) {
    out["symmetry"] = {{"center", complex_to_json(map.symmetry()->center)}, {"radius", map.symmetry()->radius}};
  }
  return out;
}

PowerSeriesMap map_from_json(const json& j) {
  try {
    const auto& cj = j.at("coefficients");
    Eigen::VectorXcd c(static_cast<Eigen::Index>(cj.size()));
    for (std::size_t k = 0; k < cj.size(); ++k) c[static_cast<Eigen::Index>(k)] = complex_from_json(cj[k]);
    MapNormalization n;
    if (j.contains("normalization")) {
      n.value_at_zero = complex_from_json(j["normalization"].at("value_at_zero"));
      n.derivative_arg = j["normalization"].at("derivative_arg").get<double>();
    }
    std::optional<geometry::Circle> sym;
    if (j.contains("symmetry")) {
      sym.emplace(complex_from_json(j["symmetry"].at("center")), j["symmetry"].at("radius").get<double>());
    }
    std::optional<CornerMap> outer;
    if (j.contains("outer")) outer.emplace(corner_map_from_json(j["outer"]));
    PowerSeriesMap map(std::move(c), n, sym, outer);
    if (j.contains("diagnostics")) {
      const auto& d = j["diagnostics"];
      map.diagnostics.nodes = d.value("nodes", 0);
      map.diagnostics.iterations = d.value("iterations", 0);
      map.diagnostics.boundary_error = d.value("boundary_error", 0.0);
      map.diagnostics.tail_ratio = d.value("tail_ratio", 0.0);
    }
    return map;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed map description: ") + e.what());
  }
}

}  // namespace hotspots::conformal
