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

#include "hotspots/geometry/domain.hpp"

namespace hotspots::spectral {

enum class ReferenceCase {
  /// Upper half-disk, Neumann arc, Dirichlet diameter.
  HalfDiskNeumannArc,
  /// Upper half-disk, Dirichlet arc, Neumann diameter.
  HalfDiskDirichletArc,
  /// Sector of opening 2*half_angle about the imaginary axis, Neumann arc, Dirichlet radii.
  Sector,
};

/// Separation-of-variables ground state, scaled so that max psi1 = 1.
struct ReferenceEigen {
  double mu1 = 0;
  std::function<double(Point)> psi1;
  Point argmax;
};

/// half_angle is used by ReferenceCase::Sector only. Throws DomainError for
/// half-angles outside (0, pi/2].
ReferenceEigen reference_eigen(ReferenceCase c, double half_angle = kPi / 4);
geometry::MixedDomain reference_domain(ReferenceCase c, double half_angle = kPi / 4);

}  // namespace hotspots::spectral
