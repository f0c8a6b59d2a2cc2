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

#include "hotspots/geometry/domain.hpp"

namespace hotspots::geometry {

enum class DirichletPart { Straight, Arc };
enum class HalfPlane { Upper, Lower };

/// Half of the unit disk. With DirichletPart::Straight the diameter kills and
/// the semicircle reflects; with DirichletPart::Arc the roles swap.
MixedDomain half_disk(DirichletPart dirichlet, HalfPlane side = HalfPlane::Upper);

/// Sector of the unit disk with opening 2*half_angle about `bisector`.
/// DirichletPart::Straight kills on the two radii, DirichletPart::Arc on the arc.
MixedDomain sector(double half_angle, DirichletPart dirichlet, double bisector = kPi / 2);

/// Symmetric lens over the chord [-1, 1]: two arcs meeting at interior angle
/// `corner_angle`; gamma2 is the lower arc, gamma1 the upper one.
MixedDomain lens(double corner_angle);

/// Region between the chord Im z = -depth and the lower unit arc; the arc kills.
MixedDomain cap(double depth);

/// Builds a domain from its JSON description:
///   {"kind": "half_disk", "dirichlet": "diameter"|"arc", "side": "upper"|"lower"}
///   {"kind": "sector", "half_angle": r, "dirichlet": "radii"|"arc", "bisector": r}
///   {"kind": "lens", "corner_angle": r}
///   {"kind": "cap", "depth": d}
///   {"kind": "arc_gamma2", "circle": {"center": [x, y], "radius": R},
///    "start_angle": r, "sweep": r, "gamma1": <curve>}
///   {"kind": "arc_gamma1", ... same with "gamma2": <curve>}
///   {"kind": "sampled", "gamma1": <curve>, "gamma2": <curve>, "arc_role": "gamma1"|"gamma2"}
/// where <curve> is one of
///   {"type": "segment", "a": [x, y], "b": [x, y]}
///   {"type": "arc", "center": [x, y], "radius": R, "start_angle": r, "sweep": r}
///   {"type": "arc_through", "a": [x, y], "mid": [x, y], "b": [x, y]}
///   {"type": "polyline", "points": [[x, y], ...]}
/// Throws DomainError on malformed input.
MixedDomain domain_from_json(const nlohmann::json& spec);

BoundaryCurve curve_from_json(const nlohmann::json& spec);
nlohmann::json curve_to_json(const BoundaryCurve& curve);

}  // namespace hotspots::geometry
