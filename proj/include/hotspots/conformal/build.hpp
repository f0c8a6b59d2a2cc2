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

#include "hotspots/conformal/power_series.hpp"
#include "hotspots/geometry/symmetrize.hpp"

namespace hotspots::conformal {

/// A domain starlike about `center`, given by its radial function rho(phi).
/// With `outer` set, center and radius describe P(target) and the series maps
/// onto it; the built map is P^{-1} of the series.
struct StarTarget {
  Point center{0, 0};
  std::function<double(double)> radius;
  /// Required g(0) and arg g'(0) of the built map.
  MapNormalization normalization;
  std::optional<geometry::Circle> symmetry;
  std::optional<CornerMap> outer;

  static StarTarget disk(Point center, double radius);
  static StarTarget ellipse(double a, double b, Point center = {0, 0});
  /// Opens the two corners of D* with a CornerMap and maps onto the image.
  /// Normalizes g(0) to the midpoint of gamma2 with g'(0) tangent to the
  /// inversion circle, so (-1, 1) goes onto gamma2.
  static StarTarget from_symmetrized(const geometry::SymmetrizedDomain& target);
};

struct BuildOptions {
  int max_iterations = 200;
  int max_nodes = 4096;
  double iteration_tol = 1e-13;
};

/// Theodorsen iteration on `boundary_nodes` FFT nodes, doubled until the
/// boundary error is below `tol`. Throws IterationError when it stalls or the
/// node budget runs out, DomainError for an unbounded target.
PowerSeriesMap build_disk_map(const StarTarget& target, int boundary_nodes = 512, double tol = 1e-8,
                              const BuildOptions& options = {});
PowerSeriesMap build_disk_map(const geometry::SymmetrizedDomain& target, int boundary_nodes = 512,
                              double tol = 1e-8, const BuildOptions& options = {});

/// sup over `samples` boundary angles of | |g - c| - rho(arg(g - c)) |.
double boundary_error(const AnalyticMap& g, const StarTarget& target, int samples = 4096);

}  // namespace hotspots::conformal
