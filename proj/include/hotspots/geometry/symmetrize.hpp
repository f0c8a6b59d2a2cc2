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

#include "hotspots/geometry/domain.hpp"

namespace hotspots::geometry {

inline constexpr double kDefaultClipRadius = 50.0;

/// D* = D, gamma2 and the reflection of D in the circle carrying gamma2.
struct SymmetrizedDomain {
  MixedDomain original;
  Circle inversion_circle;
  /// Image of gamma1 (corner0 to corner1). When clipped, a sampled curve that
  /// follows the clip circle where the true image leaves it.
  BoundaryCurve mirror_boundary;
  /// Closed loop: gamma1 followed by the mirror reversed; no repeated point.
  std::vector<Point> full_boundary;
  /// Exact boundary pieces in loop order (gamma1, reversed mirror). Empty when clipped.
  std::vector<BoundaryCurve> pieces;
  bool clipped = false;
  double clip_radius = kDefaultClipRadius;

  bool bounded() const { return !clipped; }
};

/// Requires gamma2 to be the arc. Images that leave the disk of radius
/// `clip_radius` about the inversion center are clipped to it. Throws
/// DomainError when the inversion center lies inside D.
SymmetrizedDomain symmetrize_domain(const MixedDomain& domain, double clip_radius = kDefaultClipRadius,
                                    int samples = kDefaultSamples);

/// Membership in D*: z in D, on gamma2, or mirrored into D (and inside the clip disk).
bool contains(const SymmetrizedDomain& s, Point z);

}  // namespace hotspots::geometry
