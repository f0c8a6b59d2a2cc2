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

#include "hotspots/geometry/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hotspots::geometry {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Wraps an angle into [0, 2pi).
double wrap_positive(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Point a, Point b, Point p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

void segment_ray_hits(Point a, Point b, Point origin, Point dir, std::vector<double>& out) {
  const Point e = b - a;
  const double den = cross(dir, e);
  if (std::abs(den) < 1e-300) return;
  const Point w = a - origin;
  const double s = cross(w, e) / den;
  const double u = cross(w, dir) / den;
  const double eps = 1e-12;
  if (s > 0 && u >= -eps && u <= 1 + eps) out.push_back(s);
}

}  // namespace

Circle::Circle(Point c, double r) : center(c), radius(r) {
  if (!(r > 0) || !std::isfinite(r) || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw DomainError("circle radius must be positive and finite");
  }
}

Circle Circle::through(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max(std::norm(ab), std::norm(ac));
  if (std::abs(d) <= 1e-14 * scale) throw DomainError("circle through collinear points");
  const double nab = std::norm(ab);
  const double nac = std::norm(ac);
  const Point offset{(ac.imag() * nab - ab.imag() * nac) / d, (ab.real() * nac - ac.real() * nab) / d};
  return Circle(a + offset, std::abs(offset));
}

Point invert_point(const Circle& circle, Point z) {
  if (z == circle.center) throw SingularInputError("cannot invert the center of the circle");
  return invert(circle.center, circle.radius, z);
}

double distance_to_segment(Point z, Point a, Point b, double* s_out) {
  const Point e = b - a;
  const double len2 = std::norm(e);
  double s = len2 > 0 ? dot(z - a, e) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  if (s_out) *s_out = s;
  return std::abs(z - (a + s * e));
}

BoundaryCurve BoundaryCurve::segment(Point a, Point b) {
  if (a == b) throw DomainError("degenerate segment");
  BoundaryCurve c;
  c.kind_ = Kind::Segment;
  c.a_ = a;
  c.b_ = b;
  return c;
}

BoundaryCurve BoundaryCurve::arc(const Circle& circle, double start_angle, double sweep) {
  if (!(std::abs(sweep) > 0) || !(std::abs(sweep) < kTwoPi)) {
    throw DomainError("arc sweep must lie in (0, 2pi) in magnitude");
  }
  BoundaryCurve c;
  c.kind_ = Kind::CircularArc;
  c.circle_ = circle;
  c.start_angle_ = start_angle;
  c.sweep_ = sweep;
  return c;
}

BoundaryCurve BoundaryCurve::arc_through(Point a, Point mid, Point b) {
  const double scale = std::max(std::norm(b - a), std::norm(mid - a));
  if (std::abs(cross(mid - a, b - a)) <= 1e-13 * scale) return segment(a, b);
  const Circle circle = Circle::through(a, mid, b);
  const double ta = std::arg(a - circle.center);
  const double d_ab = wrap_positive(std::arg(b - circle.center) - ta);
  const double d_am = wrap_positive(std::arg(mid - circle.center) - ta);
  const double sweep = d_am < d_ab ? d_ab : -(kTwoPi - d_ab);
  return arc(circle, ta, sweep);
}

BoundaryCurve BoundaryCurve::sampled(std::vector<Point> points) {
  const std::size_t n = points.size();
  if (n < 3) throw DomainError("sampled curve needs at least three points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(points[i].real()) || !std::isfinite(points[i].imag())) {
      throw DomainError("sampled curve has non-finite points");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) throw DomainError("sampled curve points must be pairwise distinct");
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 2; j + 1 < n; ++j) {
      if (segments_intersect(points[i], points[i + 1], points[j], points[j + 1])) {
        throw DomainError("sampled curve is self-intersecting");
      }
    }
  }
  BoundaryCurve c;
  c.kind_ = Kind::Sampled;
  c.points_ = std::move(points);
  return c;
}

const Circle& BoundaryCurve::circle() const {
  if (kind_ != Kind::CircularArc) throw DomainError("curve is not a circular arc");
  return circle_;
}

Point BoundaryCurve::at(double t) const {
  switch (kind_) {
    case Kind::Segment:
      return a_ + (b_ - a_) * t;
    case Kind::CircularArc:
      return circle_.center + std::polar(circle_.radius, start_angle_ + t * sweep_);
    case Kind::Sampled: {
      const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(points_.size() - 1);
      const std::size_t i = std::min(static_cast<std::size_t>(s), points_.size() - 2);
      const double f = s - static_cast<double>(i);
      return points_[i] + (points_[i + 1] - points_[i]) * f;
    }
  }
  return {};
}

Point BoundaryCurve::derivative(double t) const {
  switch (kind_) {
    case Kind::Segment:
      return b_ - a_;
    case Kind::CircularArc:
      return Point{0, sweep_} * std::polar(circle_.radius, start_angle_ + t * sweep_);
    case Kind::Sampled: {
      const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(points_.size() - 1);
      const std::size_t i = std::min(static_cast<std::size_t>(s), points_.size() - 2);
      return (points_[i + 1] - points_[i]) * static_cast<double>(points_.size() - 1);
    }
  }
  return {};
}

Point BoundaryCurve::start_tangent() const {
  if (kind_ == Kind::Sampled) return points_[1] - points_[0];
  return derivative(0.0);
}

Point BoundaryCurve::end_tangent() const {
  if (kind_ == Kind::Sampled) return points_[points_.size() - 2] - points_.back();
  return -derivative(1.0);
}

std::vector<Point> BoundaryCurve::sample(int n) const {
  if (kind_ == Kind::Sampled && n <= 0) return points_;
  if (n < 2) throw DomainError("need at least two samples");
  std::vector<Point> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = at(static_cast<double>(i) / (n - 1));
  return out;
}

Point BoundaryCurve::closest_point(Point z, double* t_out) const {
  switch (kind_) {
    case Kind::Segment: {
      double s = 0;
      distance_to_segment(z, a_, b_, &s);
      if (t_out) *t_out = s;
      return a_ + (b_ - a_) * s;
    }
    case Kind::CircularArc: {
      const Point rel = z - circle_.center;
      if (std::abs(rel) > 0) {
        const double u = wrap_positive((std::arg(rel) - start_angle_) * (sweep_ > 0 ? 1.0 : -1.0));
        if (u <= std::abs(sweep_)) {
          if (t_out) *t_out = u / std::abs(sweep_);
          return circle_.center + circle_.radius * rel / std::abs(rel);
        }
      }
      const Point p0 = at(0.0);
      const Point p1 = at(1.0);
      const bool first = std::abs(z - p0) <= std::abs(z - p1);
      if (t_out) *t_out = first ? 0.0 : 1.0;
      return first ? p0 : p1;
    }
    case Kind::Sampled: {
      double best = std::numeric_limits<double>::infinity();
      Point best_p = points_.front();
      double best_t = 0;
      const double m = static_cast<double>(points_.size() - 1);
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        double s = 0;
        const double d = distance_to_segment(z, points_[i], points_[i + 1], &s);
        if (d < best) {
          best = d;
          best_p = points_[i] + (points_[i + 1] - points_[i]) * s;
          best_t = (static_cast<double>(i) + s) / m;
        }
      }
      if (t_out) *t_out = best_t;
      return best_p;
    }
  }
  return {};
}

double BoundaryCurve::winding_angle(Point z) const {
  auto chord_angle = [&](Point a, Point b) { return std::arg((b - z) / (a - z)); };
  switch (kind_) {
    case Kind::Segment:
      return chord_angle(a_, b_);
    case Kind::CircularArc: {
      const Point a = at(0.0);
      const Point b = at(1.0);
      const Point m = at(0.5);
      const double chord = chord_angle(a, b);
      const double arc_side = cross(b - a, m - a);
      const double z_side = cross(b - a, z - a);
      const double sgn = sweep_ > 0 ? 1.0 : -1.0;
      if (std::abs(z_side) <= 1e-15 * std::norm(b - a)) {
        double s = 0;
        distance_to_segment(z, a, b, &s);
        if (s > 0 && s < 1) return sgn * kPi;
      }
      const bool in_segment_region =
          std::abs(z - circle_.center) < circle_.radius && z_side * arc_side > 0;
      return in_segment_region ? chord + sgn * kTwoPi : chord;
    }
    case Kind::Sampled: {
      double total = 0;
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) total += chord_angle(points_[i], points_[i + 1]);
      return total;
    }
  }
  return 0;
}

std::vector<double> BoundaryCurve::ray_hits(Point origin, Point dir) const {
  std::vector<double> out;
  switch (kind_) {
    case Kind::Segment:
      segment_ray_hits(a_, b_, origin, dir, out);
      break;
    case Kind::CircularArc: {
      const Point w = origin - circle_.center;
      const double qa = std::norm(dir);
      const double qb = 2.0 * dot(w, dir);
      const double qc = std::norm(w) - circle_.radius * circle_.radius;
      const double disc = qb * qb - 4 * qa * qc;
      if (disc < 0) break;
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
      double roots[2] = {q / qa, q != 0 ? qc / q : -qb / (2 * qa)};
      const double tol = 1e-10;
      for (double s : roots) {
        if (!(s > 0)) continue;
        const Point p = origin + s * dir;
        const double u = wrap_positive((std::arg(p - circle_.center) - start_angle_) * (sweep_ > 0 ? 1.0 : -1.0));
        if (u <= std::abs(sweep_) + tol || u >= kTwoPi - tol) out.push_back(s);
      }
      break;
    }
    case Kind::Sampled:
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) segment_ray_hits(points_[i], points_[i + 1], origin, dir, out);
      break;
  }
  return out;
}

double BoundaryCurve::length() const {
  switch (kind_) {
    case Kind::Segment:
      return std::abs(b_ - a_);
    case Kind::CircularArc:
      return circle_.radius * std::abs(sweep_);
    case Kind::Sampled: {
      double total = 0;
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) total += std::abs(points_[i + 1] - points_[i]);
      return total;
    }
  }
  return 0;
}

BoundaryCurve BoundaryCurve::reversed() const {
  switch (kind_) {
    case Kind::Segment:
      return segment(b_, a_);
    case Kind::CircularArc:
      return arc(circle_, start_angle_ + sweep_, -sweep_);
    case Kind::Sampled: {
      BoundaryCurve c = *this;
      std::reverse(c.points_.begin(), c.points_.end());
      return c;
    }
  }
  return *this;
}

BoundaryCurve BoundaryCurve::inverted(const Circle& c) const {
  const double scale = std::max(length(), c.radius);
  if (distance(c.center) <= 1e-12 * scale) {
    throw DomainError("curve passes through the inversion center; its image is unbounded");
  }
  auto s = [&](Point z) { return invert(c.center, c.radius, z); };
  if (kind_ == Kind::Sampled) {
    std::vector<Point> pts;
    pts.reserve(points_.size());
    for (Point p : points_) pts.push_back(s(p));
    return sampled(std::move(pts));
  }
  return arc_through(s(at(0.0)), s(at(0.5)), s(at(1.0)));
}

}  // namespace hotspots::geometry
