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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "hotspots/conformal/build.hpp"
#include "hotspots/conformal/convexity.hpp"
#include "hotspots/conformal/reflect.hpp"
#include "hotspots/geometry/shapes.hpp"
#include "hotspots/geometry/symmetrize.hpp"

using namespace hotspots;
using namespace hotspots::conformal;
using geometry::Circle;

namespace {

PowerSeriesMap polynomial(std::vector<Complex> c) {
  return PowerSeriesMap(Eigen::Map<Eigen::VectorXcd>(c.data(), static_cast<Eigen::Index>(c.size())));
}

// Distance to the ellipse (x/a)^2 + (y/b)^2 = 1 by Newton on the foot-point parameter.
double ellipse_distance(Point w, double a, double b) {
  double t = std::atan2(w.imag() / b, w.real() / a);
  for (int it = 0; it < 50; ++it) {
    const double x = a * std::cos(t), y = b * std::sin(t);
    const double dx = -a * std::sin(t), dy = b * std::cos(t);
    const double f = (x - w.real()) * dx + (y - w.imag()) * dy;
    const double df = dx * dx + dy * dy + (x - w.real()) * (-x) + (y - w.imag()) * (-y);
    t -= f / df;
  }
  return std::abs(w - Point{a * std::cos(t), b * std::sin(t)});
}

struct Built {
  const char* name;
  geometry::SymmetrizedDomain sym;
  PowerSeriesMap map;
};

// Parabolic gamma1 over the lower unit arc: D* is not a circular lens.
geometry::MixedDomain parabola_domain() {
  std::vector<Point> pts;
  for (int i = 0; i <= 200; ++i) {
    const double x = -0.8 + 1.6 * i / 200;
    pts.push_back({x, -0.6 + 0.2 * (1 - (x / 0.8) * (x / 0.8))});
  }
  return geometry::MixedDomain(geometry::BoundaryCurve::sampled(pts),
                               geometry::BoundaryCurve::arc_through({-0.8, -0.6}, {0, -1}, {0.8, -0.6}),
                               geometry::ArcRole::Gamma2IsArc);
}

std::vector<Built>& symmetric_maps() {
  static std::vector<Built> maps = [] {
    std::vector<Built> out;
    const std::pair<const char*, geometry::MixedDomain> cases[] = {
        {"lens60", geometry::lens(kPi / 3)}, {"lens90", geometry::lens(kPi / 2)}, {"cap", geometry::cap(0.25)}};
    for (const auto& [name, d] : cases) {
      auto s = geometry::symmetrize_domain(d);
      auto m = build_disk_map(s, 1024, 1e-2);
      out.push_back({name, s, m});
    }
    auto s = geometry::symmetrize_domain(parabola_domain());
    out.push_back({"parabola", s, build_disk_map(s, 1024, 1e-5)});
    return out;
  }();
  return maps;
}

}  // namespace

TEST_CASE("series evaluation") {
  const auto id = polynomial({0, 1});
  CHECK(std::abs(id.eval({0.3, 0.4}, 1) - 1.0) < 1e-15);
  const auto affine = polynomial({1, 2});
  CHECK(std::abs(affine.eval({0.3, -0.2}, 2)) < 1e-15);
  CHECK(std::abs(affine.eval({0.5, 0}) - 2.0) < 1e-15);
  const auto cubic = polynomial({0, 1, 0.5, 0.25});
  const Complex z{0.2, 0.7};
  CHECK(std::abs(cubic.eval(z, 2) - (1.0 + 1.5 * z)) < 1e-15);
  CHECK_THROWS_AS(id.eval({0.8, 0.8}), SingularInputError);
  CHECK_THROWS_AS(polynomial({1, 0}), DomainError);
}

TEST_CASE("disk targets recover affine maps") {
  const auto id = build_disk_map(StarTarget::disk({0, 0}, 1), 64, 1e-12);
  double off = 0;
  for (Eigen::Index k = 0; k < id.coefficients().size(); ++k) {
    if (k != 1) off += std::abs(id.coefficients()[k]);
  }
  CHECK(off < 1e-10);
  CHECK(std::abs(id.coefficients()[1] - 1.0) < 1e-12);

  const auto aff = build_disk_map(StarTarget::disk({1, 0}, 2), 64, 1e-12);
  CHECK(std::abs(aff.coefficients()[0] - 1.0) < 1e-10);
  CHECK(std::abs(aff.coefficients()[1] - 2.0) < 1e-10);
  for (Eigen::Index k = 2; k < aff.coefficients().size(); ++k) CHECK(std::abs(aff.coefficients()[k]) < 1e-10);
}

TEST_CASE("ellipse map hugs the exact ellipse") {
  const auto m = build_disk_map(StarTarget::ellipse(1, 0.8), 512, 1e-8);
  CHECK(m.diagnostics.nodes == 512);
  double worst = 0;
  for (int j = 0; j < 4096; ++j) worst = std::max(worst, ellipse_distance(m.eval(std::polar(1.0, 2 * kPi * j / 4096)), 1, 0.8));
  CHECK(worst < 1e-5);
  CHECK(std::abs(m.eval(0)) < 1e-12);
  CHECK(m.eval(0, 1) == m.coefficients()[1]);
  // Symmetric target and real normalization: real coefficients, even ones vanish.
  for (Eigen::Index k = 0; k < m.coefficients().size(); ++k) {
    CHECK(std::abs(m.coefficients()[k].imag()) < 1e-12);
    if (k % 2 == 0) CHECK(std::abs(m.coefficients()[k]) < 1e-12);
  }
}

TEST_CASE("build failures") {
  BuildOptions tight;
  tight.max_iterations = 2;
  try {
    build_disk_map(StarTarget::ellipse(1, 0.5), 64, 1e-8, tight);
    FAIL("expected IterationError");
  } catch (const IterationError& e) {
    CHECK(e.history().size() == 2);
  }
  const auto open = geometry::symmetrize_domain(geometry::half_disk(geometry::DirichletPart::Arc, geometry::HalfPlane::Lower));
  CHECK_THROWS_AS(build_disk_map(open), DomainError);
  CHECK_THROWS_AS(build_disk_map(StarTarget::disk({0, 0}, 1), 100), DomainError);
}

TEST_CASE("orthogonal lens map is the disk automorphism") {
  const auto& b = symmetric_maps()[1];
  // D* is the disk about -i of radius sqrt(2).
  const Point C{0, -1};
  const double R = std::sqrt(2.0);
  const Point p = b.sym.original.gamma2().at(0.5);
  const Point a = (p - C) / R;
  const double lambda = b.map.normalization().derivative_arg;
  auto exact = [&](Complex z) { return C + R * std::polar(1.0, lambda) * (z + a) / (1.0 + std::conj(a) * z); };
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const Complex z = std::polar(0.06 * (i + 1), 2 * kPi * j / 16);
      CHECK(std::abs(b.map.eval(z) - exact(z)) < 1e-10);
    }
  }
}

TEST_CASE("recentred disk map is a disk automorphism") {
  StarTarget t = StarTarget::disk({0, 0}, 1);
  t.normalization = {{0.5, 0}, 0.0};
  const auto m = build_disk_map(t, 256, 1e-10);
  for (int j = 0; j < 20; ++j) {
    const Complex z = std::polar(0.9, 0.3 * j);
    CHECK(std::abs(m.eval(z) - (z + 0.5) / (1.0 + 0.5 * z)) < 1e-10);
  }
}

TEST_CASE("parabolic target boundary lies on gamma1 or its mirror") {
  const auto& b = symmetric_maps()[3];
  CHECK(b.map.diagnostics.boundary_error < 1e-5);
  const auto& g1 = b.sym.original.gamma1();
  const Circle c = b.sym.inversion_circle;
  double worst = 0;
  for (int j = 0; j < 2048; ++j) {
    const Point w = b.map.eval(std::polar(1.0, 2 * kPi * (j + 0.5) / 2048));
    worst = std::max(worst, std::min(g1.distance(w), g1.distance(geometry::invert(c.center, c.radius, w))));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("symmetric maps: normalization, symmetry, convexity") {
  for (const auto& b : symmetric_maps()) {
    INFO(b.name);
    const auto& m = b.map;
    const Point p = b.sym.original.gamma2().at(0.5);
    CHECK(std::abs(m.eval(0) - p) < 1e-8);
    CHECK(std::abs(std::remainder(std::arg(m.eval(0, 1)) - m.normalization().derivative_arg, 2 * kPi)) < 1e-8);
    // The upper half of U lands in D.
    CHECK(b.sym.original.inside(m.eval({0, 0.5})));
    CHECK(b.sym.original.inside(m.eval({0.3, 0.2})));

    const Circle c = b.sym.inversion_circle;
    double sym = 0;
    for (int i = 0; i < 32; ++i) {
      for (int j = 0; j < 32; ++j) {
        const Complex z = std::polar((i + 0.5) / 32, 2 * kPi * j / 32);
        sym = std::max(sym, std::abs(geometry::invert(c.center, c.radius, m.eval(std::conj(z))) - m.eval(z)));
      }
    }
    CHECK(sym < 1e-8);

    double min_cf = 1e300;
    for (int i = 0; i < 64; ++i) {
      for (int j = 0; j < 64; ++j) min_cf = std::min(min_cf, convexity_functional(m, std::polar((i + 0.5) / 64, 2 * kPi * j / 64)));
    }
    CHECK(min_cf > 0);

    const auto radii = interior_radii(64);
    for (int k = 0; k < 64; ++k) {
      const auto r = radial_profile_check(m, 2 * kPi * k / 64, radii);
      CHECK(r.monotone);
    }
    CHECK(radial_profile_check(m, kPi / 3, radii).monotone);
  }
}

TEST_CASE("convexity functional examples") {
  const auto id = polynomial({0, 1});
  CHECK(convexity_functional(id, {0.3, -0.5}) == doctest::Approx(1.0));
  AnalyticMap square = [](Complex z, int order) -> Complex {
    if (order == 0) return z * z;
    if (order == 1) return 2.0 * z;
    return 2.0;
  };
  // 1 + z * 2 / (2z) = 2 for every z != 0.
  CHECK(convexity_functional(square, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(convexity_functional(square, 0), NumericalError);
}

TEST_CASE("radial profiles") {
  const auto r = interior_radii(64);
  const auto id = radial_profile_check(polynomial({0, 1}), 1.0, r);
  CHECK(id.monotone);
  for (std::size_t j = 0; j < r.size(); ++j) CHECK(id.profile[j] == doctest::Approx(r[j]));
  AnalyticMap half_plane = [](Complex z, int order) -> Complex {
    if (order == 0) return z / (1.0 - z);
    if (order == 1) return 1.0 / ((1.0 - z) * (1.0 - z));
    return 2.0 / ((1.0 - z) * (1.0 - z) * (1.0 - z));
  };
  const auto hp = radial_profile_check(half_plane, 0, r);
  CHECK(hp.monotone);
  for (std::size_t j = 0; j < r.size(); ++j) CHECK(hp.profile[j] == doctest::Approx(r[j] / ((1 - r[j]) * (1 - r[j]))));
  CHECK_THROWS_AS(radial_profile_check(half_plane, 0, {0.5, 0.4}), DomainError);
}

TEST_CASE("potentials") {
  const auto one = potential_from_map(polynomial({0, 1}));
  CHECK(one.admissible);
  CHECK(one(Eigen::Vector2d(0.3, 0.2)) == doctest::Approx(1.0));
  const auto four = potential_from_map(polynomial({1, 2}));
  CHECK(four(Eigen::Vector2d(-0.5, 0.1)) == doctest::Approx(4.0));
  CHECK(four.admissible);
  const auto ell = build_disk_map(StarTarget::ellipse(1, 0.8), 512, 1e-8);
  const auto v = potential_from_map(ell, "ellipse");
  CHECK(v.admissible);
  CHECK(v.warning.empty());
  // A potential shrinking like r^-3 fails the hypothesis.
  Potential bad;
  bad.name = "decaying";
  bad.value = [](const Eigen::Ref<const Eigen::VectorXd>& x) { return 1.0 / std::pow(x.norm(), 3); };
  CHECK_FALSE(verify_admissible(bad));
  CHECK_FALSE(bad.warning.empty());
  CHECK(Potential::constant_value(1).strict);
}

TEST_CASE("Schwarz reflection") {
  AnalyticMap mobius = [](Complex z, int order) -> Complex {
    const Complex i{0, 1}, d = 1.0 + i * z;
    if (order == 0) return (z + i) / d;
    if (order == 1) return 2.0 / (d * d);
    return -4.0 * i / (d * d * d);
  };
  const auto r = schwarz_reflect(mobius, Circle({0, 0}, 1));
  for (int j = 0; j < 50; ++j) {
    const Complex z = std::polar(0.9 * (j + 1) / 50.0, -kPi * (j + 0.5) / 50);
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(r.eval(z, k) - mobius(z, k)) < 1e-12 * (1 + std::abs(mobius(z, k))));
  }
  CHECK_THROWS_AS(schwarz_reflect(polynomial({0, 1}), Circle({0, 0}, 1)), NumericalError);

  for (const auto& b : symmetric_maps()) {
    INFO(b.name);
    const auto refl = schwarz_reflect(b.map, b.sym.inversion_circle);
    CHECK(seam_report(refl).derivative_jump < 1e-6);
    // One-sided second-order difference quotients at seam points away from the corners.
    const double h = 1e-5;
    for (int j = 0; j <= 36; ++j) {
      const Complex x{-0.9 + 0.05 * j, 0};
      const Complex up = (-3.0 * refl.eval(x) + 4.0 * refl.eval(x + Complex(0, h)) - refl.eval(x + Complex(0, 2 * h))) /
                         Complex(0, 2 * h);
      const Complex lo = (3.0 * refl.lower(x, 0) - 4.0 * refl.eval(x - Complex(0, h)) + refl.eval(x - Complex(0, 2 * h))) /
                         Complex(0, 2 * h);
      CHECK(std::abs(up - lo) < 1e-6);
    }
  }
}

TEST_CASE("map JSON round trip") {
  const auto& m = symmetric_maps()[2].map;
  const auto back = map_from_json(map_to_json(m));
  CHECK(back.coefficients() == m.coefficients());
  REQUIRE(back.symmetry().has_value());
  CHECK(back.symmetry()->radius == m.symmetry()->radius);
  CHECK(back.diagnostics.nodes == m.diagnostics.nodes);
  CHECK_THROWS_AS(map_from_json(nlohmann::json{{"coefficients", 3}}), DomainError);
}
