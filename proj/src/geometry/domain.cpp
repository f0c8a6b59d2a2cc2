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

#include "hotspots/geometry/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hotspots::geometry {

namespace {

double max_pairwise_distance(const std::vector<Point>& pts) {
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, std::norm(pts[i] - pts[j]));
  }
  return std::sqrt(best);
}

double signed_area(const std::vector<Point>& loop) {
  double a = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) a += cross(loop[i], loop[(i + 1) % loop.size()]);
  return 0.5 * a;
}

std::string fmt_point(Point p) {
  return "(" + std::to_string(p.real()) + ", " + std::to_string(p.imag()) + ")";
}

}  // namespace

MixedDomain::MixedDomain(BoundaryCurve gamma1, BoundaryCurve gamma2, ArcRole role, bool require_convex,
                         double tol)
    : gamma1_(std::move(gamma1)), gamma2_(std::move(gamma2)), role_(role), tol_(tol) {
  const double scale = std::max({gamma1_.length(), gamma2_.length(), 1e-300});
  const double match = std::max(tol_, 1e-12) * std::max(1.0, scale);
  if (std::abs(gamma1_.start() - gamma2_.start()) > match || std::abs(gamma1_.end() - gamma2_.end()) > match) {
    throw DomainError("gamma1 and gamma2 must share both corners");
  }
  if (std::abs(corner0() - corner1()) <= match) throw DomainError("corners coincide");
  if (role_ == ArcRole::Gamma1IsArc && !gamma1_.is_arc()) throw DomainError("gamma1 must be a circular arc");
  if (role_ == ArcRole::Gamma2IsArc && !gamma2_.is_arc()) throw DomainError("gamma2 must be a circular arc");

  const auto loop = boundary_loop();
  area_ = signed_area(loop);
  orientation_ = area_ >= 0 ? 1 : -1;
  area_ = std::abs(area_);
  diameter_ = max_pairwise_distance(loop);
  if (area_ <= std::max(tol_, 1e-12) * diameter_ * diameter_) throw DomainError("domain has empty interior");

  Point lo = loop.front(), hi = loop.front();
  for (Point p : loop) {
    lo = {std::min(lo.real(), p.real()), std::min(lo.imag(), p.imag())};
    hi = {std::max(hi.real(), p.real()), std::max(hi.imag(), p.imag())};
  }
  bbox_ = {lo, hi};

  if (require_convex) {
    const auto conv = is_convex(loop, tol_);
    if (!conv.convex) {
      throw DomainError("domain boundary is not convex near " + fmt_point((*conv.witness)[1]));
    }
  }
}

const Circle& MixedDomain::arc_circle() const {
  return role_ == ArcRole::Gamma1IsArc ? gamma1_.circle() : gamma2_.circle();
}

std::vector<Point> MixedDomain::boundary_loop(int samples_per_curve) const {
  auto g1 = gamma1_.kind() == BoundaryCurve::Kind::Sampled ? gamma1_.points() : gamma1_.sample(samples_per_curve);
  auto g2 = gamma2_.kind() == BoundaryCurve::Kind::Sampled ? gamma2_.points() : gamma2_.sample(samples_per_curve);
  std::vector<Point> loop(g1.begin(), g1.end());
  // gamma2 reversed, skipping both shared corners.
  for (std::size_t i = g2.size() - 1; i-- > 1;) loop.push_back(g2[i]);
  return loop;
}

bool MixedDomain::inside(Point z) const {
  const double w = gamma1_.winding_angle(z) - gamma2_.winding_angle(z);
  return std::abs(w) > kPi;
}

Location MixedDomain::locate(Point z, std::optional<double> band) const {
  const double b = band.value_or(tol_ * std::max(1.0, diameter_));
  const double d1 = gamma1_.distance(z);
  const double d2 = gamma2_.distance(z);
  if (std::min(d1, d2) <= b) return d2 <= d1 ? Location::OnGamma2 : Location::OnGamma1;
  return inside(z) ? Location::Interior : Location::Outside;
}

ConvexityResult is_convex(const std::vector<Point>& boundary, double tol) {
  std::vector<Point> pts;
  pts.reserve(boundary.size());
  for (Point p : boundary) {
    if (pts.empty() || p != pts.back()) pts.push_back(p);
  }
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  if (pts.size() < 3) throw DomainError("convexity test needs at least three points");

  const double scale = max_pairwise_distance(pts);
  const double sign = signed_area(pts) >= 0 ? 1.0 : -1.0;
  const double floor = -tol * scale * scale;
  const std::size_t n = pts.size();
  double turning = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = pts[(i + n - 1) % n];
    const Point cur = pts[i];
    const Point next = pts[(i + 1) % n];
    const double c = cross(cur - prev, next - cur);
    if (sign * c < floor) return {false, std::array<Point, 3>{prev, cur, next}};
    turning += std::arg((next - cur) / (cur - prev));
  }
  // Consistent turning that winds more than once is a star polygon, not convex.
  if (std::abs(std::abs(turning) - 2 * kPi) > 1e-6) {
    return {false, std::array<Point, 3>{pts[n - 1], pts[0], pts[1]}};
  }
  return {};
}

std::pair<double, double> corner_angles(const MixedDomain& domain) {
  auto angle = [](Point a, Point b) {
    const double na = std::abs(a);
    const double nb = std::abs(b);
    if (!(na > 0) || !(nb > 0)) throw DomainError("zero-length half-tangent estimate at a corner");
    return std::acos(std::clamp(dot(a, b) / (na * nb), -1.0, 1.0));
  };
  return {angle(domain.gamma1().start_tangent(), domain.gamma2().start_tangent()),
          angle(domain.gamma1().end_tangent(), domain.gamma2().end_tangent())};
}

bool corner_hypothesis_holds(const MixedDomain& domain, double tol) {
  const auto [a0, a1] = corner_angles(domain);
  return a0 <= kPi / 2 + tol && a1 <= kPi / 2 + tol;
}

StarlikeResult is_starlike_complement(const MixedDomain& domain, int grid) {
  if (domain.arc_role() != ArcRole::Gamma1IsArc) throw DomainError("starlikeness test needs gamma1 to be the arc");
  const Circle& c = domain.gamma1().circle();
  if (std::abs(c.center) > 1e-9 || std::abs(c.radius - 1.0) > 1e-9) {
    throw DomainError("gamma1 must lie on the unit circle centered at the origin");
  }
  for (Point p : domain.boundary_loop()) {
    if (std::abs(p) > 1.0 + 1e-9) throw DomainError("domain not contained in the closed unit disk");
  }

  StarlikeResult result;
  const double band = 1e-9;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Point z{-1.0 + 2.0 * i / (grid - 1), -1.0 + 2.0 * j / (grid - 1)};
      if (std::abs(z) >= 1.0 || domain.locate(z, band) != Location::Outside) continue;
      for (int k = 1; k <= 9; ++k) {
        const double t = 0.1 * k;
        if (domain.locate(t * z, band) == Location::Interior) {
          result.witness = std::make_pair(z, t);
          return result;
        }
      }
    }
  }
  result.starlike = true;
  result.certificate = StarlikeCertificate(&domain);
  return result;
}

std::vector<Point> origin_arc(Point center, Point z1, Point z2, int n) {
  std::vector<Point> out(static_cast<std::size_t>(n));
  const Point a = z1 - center;
  const Point b = z2 - center;
  const double scale = std::max(std::norm(a), std::norm(b));
  if (std::abs(cross(a, b)) <= 1e-12 * scale) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = z1 + (z2 - z1) * (static_cast<double>(i) / (n - 1));
    return out;
  }
  const Circle k = Circle::through(center, z1, z2);
  auto wrap = [](double x) {
    x = std::fmod(x, 2 * kPi);
    return x < 0 ? x + 2 * kPi : x;
  };
  const double t1 = std::arg(z1 - k.center);
  const double d12 = wrap(std::arg(z2 - k.center) - t1);
  const double d1c = wrap(std::arg(center - k.center) - t1);
  const double sweep = d1c < d12 ? -(2 * kPi - d12) : d12;
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = k.center + std::polar(k.radius, t1 + sweep * i / (n - 1));
  }
  out.front() = z1;
  out.back() = z2;
  return out;
}

bool origin_arc_contained(const MixedDomain& domain, Point z1, Point z2) {
  if (domain.arc_role() != ArcRole::Gamma2IsArc) throw DomainError("origin-arc test needs gamma2 to be the arc");
  for (Point w : origin_arc(domain.arc_circle().center, z1, z2)) {
    const Location loc = domain.locate(w);
    if (loc != Location::Interior && loc != Location::OnGamma2) return false;
  }
  return true;
}

bool origin_arc_admissible(const MixedDomain& domain, Point z1, Point z2) {
  if (domain.arc_role() != ArcRole::Gamma2IsArc) throw DomainError("origin-arc test needs gamma2 to be the arc");
  const Circle& c = domain.arc_circle();
  const auto arc = origin_arc(c.center, z1, z2);
  for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
    if (std::abs(arc[i] - c.center) >= c.radius * (1 - 1e-12)) return false;
  }
  return true;
}

}  // namespace hotspots::geometry
