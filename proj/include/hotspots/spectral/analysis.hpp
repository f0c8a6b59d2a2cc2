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

#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hotspots/conformal/power_series.hpp"
#include "hotspots/spectral/fem.hpp"
#include "hotspots/stochastic/estimators.hpp"

namespace hotspots::spectral {

/// Piecewise-linear nodal field with bucketed point location.
class MeshField {
 public:
  MeshField(const TriMesh& mesh, Eigen::VectorXd values);

  /// Points up to h^2 outside the mesh (curved boundaries) evaluate at the
  /// nearest point of the nearest triangle; farther ones throw DomainError.
  double operator()(Point z) const;
  const TriMesh& mesh() const { return *mesh_; }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  const TriMesh* mesh_;
  Eigen::VectorXd values_;
  Point lo_;
  double cell_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
  double band_ = 0;
};

struct Hotspot {
  Point argmax;
  double value = 0;
  double dist_to_gamma1 = 0;
  int vertex = -1;
};

/// Maximal vertex of psi1, refined by a least-squares quadratic over its star
/// when that has an interior maximum inside the star.
Hotspot hotspot_locate(const EigenPair& pair, const TriMesh& mesh);

/// Distance to the union of Neumann boundary edges.
double distance_to_neumann(const TriMesh& mesh, Point z);

enum class RayKind { HyperbolicGammaTheta, EuclideanRTheta };

struct RayCurve {
  RayKind kind = RayKind::EuclideanRTheta;
  double theta = 0;
  /// Ordered toward gamma1.
  std::vector<Point> samples;
};

/// f(r e^{i theta}) for r in [0, 1], with f the half-disk map onto D (0 < theta < pi).
RayCurve hyperbolic_ray(const conformal::AnalyticMap& f, double theta, int n = 64);
/// The part of {r e^{i theta}} in the closure of D, ordered toward gamma1.
/// Throws DomainError when the ray misses D or does not end on gamma1.
RayCurve euclidean_ray(const geometry::MixedDomain& domain, double theta, int n = 64);

struct Monotonicity {
  int violations = 0;
  double min_increment = 0;
};

/// Counts decreases beyond rel_tol * (range of the field), or beyond interpolation
/// roundoff for flat fields, along the samples.
Monotonicity monotonicity_along_curve(const MeshField& field, const RayCurve& curve, double rel_tol = 1e-8);

struct Crosscheck {
  std::vector<double> predicted;
  std::vector<double> deviations;
  double max_deviation = 0;
  /// exp(-(mu2 - mu1) t).
  double gap_factor = 0;
};

/// Compares Monte Carlo survival P^z{tau_D > 2t} (Brownian motion with
/// generator Delta/2 run for time 2t) with exp(-mu1 t) psi1(z) int psi1, where
/// mu1 is the eigenvalue of -Delta. Deviations are in units of
/// sqrt(stderr^2 + model_error^2); model_error may be empty.
/// Throws DomainError for t <= 0, weighted estimates, mismatched times or
/// exp(-(mu2 - mu1) t) >= 0.05.
Crosscheck expansion_crosscheck(const TriMesh& mesh, const EigenPair& pair,
                                const std::vector<stochastic::SurvivalEstimate>& estimates, double t,
                                const std::vector<double>& model_error = {});

/// {mu1, residual, argmax: [x, y], dist_to_gamma1, h}.
nlohmann::json eigen_report(const EigenPair& pair, const Hotspot& spot, double h);

}  // namespace hotspots::spectral
