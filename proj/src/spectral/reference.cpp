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

#include "hotspots/spectral/reference.hpp"

#include <cmath>

#include "hotspots/geometry/shapes.hpp"
#include "hotspots/spectral/bessel.hpp"

namespace hotspots::spectral {

namespace {

void check_half_angle(double half_angle) {
  if (!(half_angle > 0) || !(half_angle <= kPi / 2 + 1e-12)) throw DomainError("unsupported sector half-angle");
}

}  // namespace

ReferenceEigen reference_eigen(ReferenceCase c, double half_angle) {
  ReferenceEigen r;
  switch (c) {
    case ReferenceCase::HalfDiskNeumannArc: {
      const double j = bessel_prime_zero(1.0);
      const double top = bessel_j(1.0, j);
      r.mu1 = j * j;
      r.psi1 = [j, top](Point z) { return bessel_j(1.0, j * std::abs(z)) * std::sin(std::arg(z)) / top; };
      r.argmax = {0, 1};
      return r;
    }
    case ReferenceCase::HalfDiskDirichletArc: {
      const double j = bessel_zero(0.0);
      r.mu1 = j * j;
      r.psi1 = [j](Point z) { return bessel_j(0.0, j * std::abs(z)); };
      r.argmax = {0, 0};
      return r;
    }
    case ReferenceCase::Sector: {
      check_half_angle(half_angle);
      const double nu = kPi / (2 * half_angle);
      const double j = bessel_prime_zero(nu);
      const double top = bessel_j(nu, j);
      const double start = kPi / 2 - half_angle;
      r.mu1 = j * j;
      r.psi1 = [=](Point z) {
        const double rr = std::abs(z);
        if (rr == 0) return 0.0;
        return bessel_j(nu, j * rr) * std::sin(nu * (std::arg(z) - start)) / top;
      };
      r.argmax = {0, 1};
      return r;
    }
  }
  throw DomainError("unsupported reference case");
}

geometry::MixedDomain reference_domain(ReferenceCase c, double half_angle) {
  using geometry::DirichletPart;
  switch (c) {
    case ReferenceCase::HalfDiskNeumannArc:
      return geometry::half_disk(DirichletPart::Straight);
    case ReferenceCase::HalfDiskDirichletArc:
      return geometry::half_disk(DirichletPart::Arc);
    case ReferenceCase::Sector:
      check_half_angle(half_angle);
      return geometry::sector(half_angle, DirichletPart::Straight);
  }
  throw DomainError("unsupported reference case");
}

}  // namespace hotspots::spectral
