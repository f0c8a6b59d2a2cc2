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

#include <cmath>
#include <complex>
#include <vector>

#include "hotspots/types.hpp"

namespace hotspots::geometry {

struct Circle {
  Point center;
  double radius;

  Circle(Point c, double r);

  /// Circle through three non-collinear points.
  static Circle through(Point a, Point b, Point c);
};

/// Reflection in the circle |z - center| = radius:  center + radius^2 / conj(z - center).
template <typename Scalar>
std::complex<Scalar> invert(const std::complex<Scalar>& center, Scalar radius,
                            const std::complex<Scalar>& z) {
  return center + radius * radius / std::conj(z - center);
}

/// Throws SingularInputError at the center.
Point invert_point(const Circle& circle, Point z);

/// A simple planar curve parameterized over t in [0, 1].
///
/// Segments and circular arcs are exact; sampled curves are polylines through
/// their samples with a uniform parameter grid (sample i sits at t = i/(n-1)).
class BoundaryCurve {
 public:
  enum class Kind { Segment, CircularArc, Sampled };

  static BoundaryCurve segment(Point a, Point b);
  /// Arc of `circle` from `start_angle` sweeping `sweep` radians (signed, 0 < |sweep| < 2pi).
  static BoundaryCurve arc(const Circle& circle, double start_angle, double sweep);
  /// Arc from a through mid to b; returns a segment if the three points are collinear.
  static BoundaryCurve arc_through(Point a, Point mid, Point b);
  /// At least three pairwise distinct points, non-self-intersecting.
  static BoundaryCurve sampled(std::vector<Point> points);

  Kind kind() const { return kind_; }
  bool is_arc() const { return kind_ == Kind::CircularArc; }

  Point at(double t) const;
  /// d(gamma)/dt.
  Point derivative(double t) const;
  Point start() const { return at(0.0); }
  Point end() const { return at(1.0); }

  /// One-sided tangent at t = 0 pointing along the curve.
  Point start_tangent() const;
  /// One-sided tangent at t = 1 pointing back along the curve.
  Point end_tangent() const;

  /// n >= 2 points at uniform parameters; sampled curves return their own points when n <= 0.
  std::vector<Point> sample(int n) const;
  const std::vector<Point>& points() const { return points_; }

  Point closest_point(Point z, double* t_out = nullptr) const;
  double distance(Point z) const { return std::abs(z - closest_point(z)); }

  /// Signed angle swept by arg(gamma(t) - z) as t runs over [0, 1].
  double winding_angle(Point z) const;

  /// Distances s > 0 at which origin + s*dir meets the curve (dir need not be unit).
  std::vector<double> ray_hits(Point origin, Point dir) const;

  double length() const;
  BoundaryCurve reversed() const;

  /// Image under reflection in `circle`. Throws DomainError if the curve
  /// passes through the center (unbounded image).
  BoundaryCurve inverted(const Circle& circle) const;

  // Arc data (CircularArc only).
  const Circle& circle() const;
  double start_angle() const { return start_angle_; }
  double sweep() const { return sweep_; }

 private:
  BoundaryCurve() : circle_(Point{0, 0}, 1.0) {}

  Kind kind_ = Kind::Segment;
  Point a_{}, b_{};
  Circle circle_;
  double start_angle_ = 0.0;
  double sweep_ = 0.0;
  std::vector<Point> points_;
};

double distance_to_segment(Point z, Point a, Point b, double* s_out = nullptr);

}  // namespace hotspots::geometry
