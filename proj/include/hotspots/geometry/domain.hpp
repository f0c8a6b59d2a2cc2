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

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hotspots/geometry/curve.hpp"

namespace hotspots::geometry {

/// Which boundary piece is the circular arc that drives the analysis.
enum class ArcRole { Gamma1IsArc, Gamma2IsArc };

enum class Location { Interior, OnGamma1, OnGamma2, Outside };

inline constexpr int kDefaultSamples = 512;
inline constexpr double kDefaultTol = 1e-9;

/// Planar convex domain whose boundary is gamma1 (reflecting / Neumann)
/// followed by gamma2 (killing / Dirichlet). Both curves run from corner0 to
/// corner1. Immutable after construction.
class MixedDomain {
 public:
  /// Validates shared corners, the designated arc, non-empty interior and
  /// (unless `require_convex` is false) convexity of the closed boundary.
  MixedDomain(BoundaryCurve gamma1, BoundaryCurve gamma2, ArcRole role, bool require_convex = true,
              double tol = kDefaultTol);

  const BoundaryCurve& gamma1() const { return gamma1_; }
  const BoundaryCurve& gamma2() const { return gamma2_; }
  ArcRole arc_role() const { return role_; }
  Point corner0() const { return gamma1_.start(); }
  Point corner1() const { return gamma1_.end(); }
  /// Circle carrying the designated arc.
  const Circle& arc_circle() const;
  double tol() const { return tol_; }

  /// Closed loop: gamma1 samples then gamma2 reversed, without repeating the first point.
  std::vector<Point> boundary_loop(int samples_per_curve = kDefaultSamples) const;

  /// +1 if the loop gamma1, reversed(gamma2) runs counter-clockwise, -1 otherwise.
  int orientation() const { return orientation_; }
  double diameter() const { return diameter_; }
  double area() const { return area_; }
  /// Axis-aligned bounding box (min corner, max corner) of the boundary samples.
  std::pair<Point, Point> bounding_box() const { return bbox_; }

  /// Open-domain membership via the winding number of the exact boundary.
  bool inside(Point z) const;
  /// Classification with a boundary band of width `band` (default: tol scaled by diameter).
  Location locate(Point z, std::optional<double> band = std::nullopt) const;

 private:
  BoundaryCurve gamma1_;
  BoundaryCurve gamma2_;
  ArcRole role_;
  double tol_;
  int orientation_ = 1;
  double diameter_ = 0;
  double area_ = 0;
  std::pair<Point, Point> bbox_;
};

struct ConvexityResult {
  bool convex = true;
  /// Violating (previous, vertex, next) triple when not convex.
  std::optional<std::array<Point, 3>> witness;
};

/// Sign test on consecutive cross products of a closed polyline.
/// Cross products down to -tol * diameter^2 are accepted. A repeated closing
/// point is ignored. Throws DomainError for fewer than three points.
ConvexityResult is_convex(const std::vector<Point>& boundary, double tol = kDefaultTol);

/// Interior angles between the half-tangents of gamma1 and gamma2 at corner0 and corner1.
std::pair<double, double> corner_angles(const MixedDomain& domain);

/// True when both corner angles are at most pi/2 + tol.
bool corner_hypothesis_holds(const MixedDomain& domain, double tol = 1e-6);

struct StarlikeResult;
StarlikeResult is_starlike_complement(const MixedDomain& domain, int grid);

/// Proof that U \ D is starlike about the origin, only produced by
/// `is_starlike_complement`. Refers to the domain it certifies, which must outlive it.
class StarlikeCertificate {
 public:
  const MixedDomain& domain() const { return *domain_; }

 private:
  friend StarlikeResult is_starlike_complement(const MixedDomain&, int);
  explicit StarlikeCertificate(const MixedDomain* d) : domain_(d) {}
  const MixedDomain* domain_;
};

struct StarlikeResult {
  bool starlike = false;
  /// Failing (z, t) with z in U \ D and t*z in D.
  std::optional<std::pair<Point, double>> witness;
  std::optional<StarlikeCertificate> certificate;
};

/// Grid test of starlikeness of U \ D about the origin for domains whose gamma1
/// lies on the unit circle. Throws DomainError when the preconditions fail.
StarlikeResult is_starlike_complement(const MixedDomain& domain, int grid = 161);

/// Arc of the circle through the inversion center, z1 and z2, between z1 and z2
/// and avoiding the center (the segment when collinear), sampled with n points.
std::vector<Point> origin_arc(Point center, Point z1, Point z2, int n = 257);

/// Whether the origin arc from z1 to z2 stays in D union gamma2.
bool origin_arc_contained(const MixedDomain& domain, Point z1, Point z2);

/// Whether the origin arc meets gamma2 at most at z2 (the hypothesis under
/// which containment is asserted).
bool origin_arc_admissible(const MixedDomain& domain, Point z1, Point z2);

}  // namespace hotspots::geometry
