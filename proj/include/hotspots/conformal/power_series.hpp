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
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hotspots/conformal/corner_map.hpp"
#include "hotspots/geometry/curve.hpp"
#include "hotspots/types.hpp"

namespace hotspots::conformal {

/// f(z), f'(z) or f''(z) for order 0, 1, 2.
using AnalyticMap = std::function<Complex(Complex, int)>;

struct MapNormalization {
  Point value_at_zero{0, 0};
  double derivative_arg = 0;
};

struct BuildDiagnostics {
  int nodes = 0;
  int iterations = 0;
  double boundary_error = 0;
  /// |c_N| / max_k |c_k|.
  double tail_ratio = 0;
  std::vector<double> residual_history;
};

/// g(z) = sum_k c_k z^k on the closed unit disk, optionally followed by a
/// closed-form corner map: g = P^{-1}(sum_k c_k z^k).
class PowerSeriesMap {
 public:
  PowerSeriesMap() = default;
  explicit PowerSeriesMap(Eigen::VectorXcd coefficients, MapNormalization normalization = {},
                          std::optional<geometry::Circle> symmetry = std::nullopt,
                          std::optional<CornerMap> outer = std::nullopt);

  /// Horner evaluation of the differentiated map. Throws SingularInputError for |z| > 1.
  Complex eval(Complex z, int order = 0) const;
  /// The bare series, without the outer corner map.
  Complex series(Complex z, int order = 0) const;
  Complex operator()(Complex z, int order) const { return eval(z, order); }

  const Eigen::VectorXcd& coefficients() const { return c_; }
  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  const MapNormalization& normalization() const { return normalization_; }
  /// Circle that the map sends (-1, 1) into, when the map is symmetric.
  const std::optional<geometry::Circle>& symmetry() const { return symmetry_; }
  const std::optional<CornerMap>& outer() const { return outer_; }

  BuildDiagnostics diagnostics;

 private:
  Eigen::VectorXcd c_;
  Eigen::Index active_ = 0;
  MapNormalization normalization_;
  std::optional<geometry::Circle> symmetry_;
  std::optional<CornerMap> outer_;
};

/// {"coefficients": [[re, im], ...], "normalization": {...}, "symmetry": {...}, "diagnostics": {...}}
nlohmann::json map_to_json(const PowerSeriesMap& map);
PowerSeriesMap map_from_json(const nlohmann::json& j);

}  // namespace hotspots::conformal
