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

#include "hotspots/geometry/shapes.hpp"

#include <cmath>
#include <string>

namespace hotspots::geometry {

using nlohmann::json;

MixedDomain half_disk(DirichletPart dirichlet, HalfPlane side) {
  const double sweep = side == HalfPlane::Upper ? -kPi : kPi;
  auto semicircle = BoundaryCurve::arc(Circle({0, 0}, 1.0), kPi, sweep);
  auto diameter = BoundaryCurve::segment({-1, 0}, {1, 0});
  if (dirichlet == DirichletPart::Straight) return MixedDomain(semicircle, diameter, ArcRole::Gamma1IsArc);
  return MixedDomain(diameter, semicircle, ArcRole::Gamma2IsArc);
}

MixedDomain sector(double half_angle, DirichletPart dirichlet, double bisector) {
  if (!(half_angle > 0) || !(half_angle < kPi / 2 + 1e-12)) {
    throw DomainError("sector half-angle must lie in (0, pi/2] for a convex sector");
  }
  const double a0 = bisector - half_angle;
  const Point c0 = std::polar(1.0, a0);
  const Point c1 = std::polar(1.0, bisector + half_angle);
  auto arc = BoundaryCurve::arc(Circle({0, 0}, 1.0), a0, 2 * half_angle);
  auto radii = BoundaryCurve::sampled({c0, {0, 0}, c1});
  if (dirichlet == DirichletPart::Straight) return MixedDomain(arc, radii, ArcRole::Gamma1IsArc);
  return MixedDomain(radii, arc, ArcRole::Gamma2IsArc);
}

MixedDomain lens(double corner_angle) {
  if (!(corner_angle > 0) || !(corner_angle < kPi)) throw DomainError("lens corner angle must lie in (0, pi)");
  const double sag = std::tan(corner_angle / 4);
  auto lower = BoundaryCurve::arc_through({-1, 0}, {0, -sag}, {1, 0});
  auto upper = BoundaryCurve::arc_through({-1, 0}, {0, sag}, {1, 0});
  return MixedDomain(upper, lower, ArcRole::Gamma2IsArc);
}

MixedDomain cap(double depth) {
  if (!(depth > 0) || !(depth < 1)) throw DomainError("cap depth must lie in (0, 1)");
  const double x = std::sqrt(1 - depth * depth);
  auto chord = BoundaryCurve::segment({-x, -depth}, {x, -depth});
  auto arc = BoundaryCurve::arc_through({-x, -depth}, {0, -1}, {x, -depth});
  return MixedDomain(chord, arc, ArcRole::Gamma2IsArc);
}

namespace {

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("points are [x, y] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(Point p) { return json::array({p.real(), p.imag()}); }

DirichletPart dirichlet_of(const json& spec, const char* straight_name) {
  const std::string d = spec.value("dirichlet", std::string(straight_name));
  if (d == straight_name) return DirichletPart::Straight;
  if (d == "arc") return DirichletPart::Arc;
  throw DomainError("unknown dirichlet part '" + d + "'");
}

}  // namespace

BoundaryCurve curve_from_json(const json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "segment") return BoundaryCurve::segment(point_from_json(spec.at("a")), point_from_json(spec.at("b")));
  if (type == "arc") {
    return BoundaryCurve::arc(Circle(point_from_json(spec.at("center")), spec.at("radius").get<double>()),
                              spec.at("start_angle").get<double>(), spec.at("sweep").get<double>());
  }
  if (type == "arc_through") {
    return BoundaryCurve::arc_through(point_from_json(spec.at("a")), point_from_json(spec.at("mid")),
                                      point_from_json(spec.at("b")));
  }
  if (type == "polyline") {
    std::vector<Point> pts;
    for (const auto& p : spec.at("points")) pts.push_back(point_from_json(p));
    return BoundaryCurve::sampled(std::move(pts));
  }
  throw DomainError("unknown curve type '" + type + "'");
}

json curve_to_json(const BoundaryCurve& curve) {
  switch (curve.kind()) {
    case BoundaryCurve::Kind::Segment:
      return {{"type", "segment"}, {"a", point_to_json(curve.start())}, {"b", point_to_json(curve.end())}};
    case BoundaryCurve::Kind::CircularArc:
      return {{"type", "arc"},
              {"center", point_to_json(curve.circle().center)},
              {"radius", curve.circle().radius},
              {"start_angle", curve.start_angle()},
              {"sweep", curve.sweep()}};
    case BoundaryCurve::Kind::Sampled: {
      json pts = json::array();
      for (Point p : curve.points()) pts.push_back(point_to_json(p));
      return {{"type", "polyline"}, {"points", pts}};
    }
  }
  return {};
}

MixedDomain domain_from_json(const json& spec) {
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "half_disk") {
      const std::string side = spec.value("side", std::string("upper"));
      if (side != "upper" && side != "lower") throw DomainError("half_disk side must be upper or lower");
      return half_disk(dirichlet_of(spec, "diameter"), side == "upper" ? HalfPlane::Upper : HalfPlane::Lower);
    }
    if (kind == "sector") {
      return sector(spec.at("half_angle").get<double>(), dirichlet_of(spec, "radii"),
                    spec.value("bisector", kPi / 2));
    }
    if (kind == "lens") return lens(spec.at("corner_angle").get<double>());
    if (kind == "cap") return cap(spec.at("depth").get<double>());
    if (kind == "arc_gamma1" || kind == "arc_gamma2") {
      auto arc = BoundaryCurve::arc(Circle(point_from_json(spec.at("circle").at("center")),
                                           spec.at("circle").at("radius").get<double>()),
                                    spec.at("start_angle").get<double>(), spec.at("sweep").get<double>());
      if (kind == "arc_gamma1") return MixedDomain(arc, curve_from_json(spec.at("gamma2")), ArcRole::Gamma1IsArc);
      return MixedDomain(curve_from_json(spec.at("gamma1")), arc, ArcRole::Gamma2IsArc);
    }
    if (kind == "sampled") {
      const std::string role = spec.at("arc_role").get<std::string>();
      if (role != "gamma1" && role != "gamma2") throw DomainError("arc_role must be gamma1 or gamma2");
      return MixedDomain(curve_from_json(spec.at("gamma1")), curve_from_json(spec.at("gamma2")),
                         role == "gamma1" ? ArcRole::Gamma1IsArc : ArcRole::Gamma2IsArc);
    }
    throw DomainError("unknown domain kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed domain description: ") + e.what());
  }
}

}  // namespace hotspots::geometry
