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
#include <sstream>

#include "doctest.h"
#include "hotspots/geometry/shapes.hpp"
#include "hotspots/spectral/analysis.hpp"
#include "hotspots/spectral/bessel.hpp"
#include "hotspots/spectral/reference.hpp"

using namespace hotspots;
using namespace hotspots::spectral;
using geometry::DirichletPart;

namespace {

conformal::AnalyticMap identity_map() {
  return [](Complex z, int order) { return order == 0 ? z : Complex(order == 1, 0); };
}

TriMesh retag(TriMesh m, EdgeTag tag) {
  for (auto& e : m.boundary_edges) e.tag = tag;
  return m;
}

const ReferenceCase kCases[] = {ReferenceCase::HalfDiskNeumannArc, ReferenceCase::HalfDiskDirichletArc,
                                ReferenceCase::Sector};

// 16 curves per reference case: gamma_theta = radii for the Neumann-arc half-disk (identity map),
// radii toward gamma1 otherwise.
std::vector<RayCurve> curves_for(ReferenceCase c, const geometry::MixedDomain& d) {
  std::vector<RayCurve> out;
  for (int j = 0; j < 16; ++j) {
    const double s = (j + 0.5) / 16;
    if (c == ReferenceCase::HalfDiskNeumannArc) out.push_back(hyperbolic_ray(identity_map(), kPi * s));
    if (c == ReferenceCase::HalfDiskDirichletArc) out.push_back(euclidean_ray(d, kPi * s));
    if (c == ReferenceCase::Sector) out.push_back(euclidean_ray(d, kPi / 4 + kPi / 2 * s));
  }
  return out;
}

}  // namespace

TEST_CASE("Bessel series agrees with the standard library") {
  for (double nu : {0.0, 1.0, 2.0, 0.5, 2.7}) {
    for (double x : {0.1, 1.0, 3.3, 7.5, 15.0, 19.9, 25.0}) {
      CHECK(bessel_j(nu, x) == doctest::Approx(std::cyl_bessel_j(nu, x)).epsilon(1e-10).scale(1));
      const double fd = (std::cyl_bessel_j(nu, x + 1e-6) - std::cyl_bessel_j(nu, x - 1e-6)) / 2e-6;
      CHECK(bessel_j_prime(nu, x) == doctest::Approx(fd).epsilon(1e-7).scale(1));
    }
  }
  CHECK(bessel_j(0, 0) == 1.0);
  CHECK(bessel_j(2, 0) == 0.0);
  CHECK(bessel_j_prime(1, 0) == 0.5);
  CHECK_THROWS_AS(bessel_j(-1, 1), DomainError);
  CHECK_THROWS_AS(bessel_zero(1, 0), DomainError);
}

TEST_CASE("Bessel zeros") {
  CHECK(bessel_zero(0) == doctest::Approx(2.404825557695773).epsilon(1e-13));
  CHECK(bessel_zero(1) == doctest::Approx(3.831705970207512).epsilon(1e-13));
  CHECK(bessel_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-13));
  CHECK(bessel_prime_zero(1) == doctest::Approx(1.841183781340659).epsilon(1e-13));
  CHECK(bessel_prime_zero(2) == doctest::Approx(3.054236928227140).epsilon(1e-13));
  // J0' = -J1, so their zeros coincide.
  CHECK(bessel_prime_zero(0) == doctest::Approx(bessel_zero(1)).epsilon(1e-13));
  for (double nu : {0.5, 1.0, 3.0}) {
    CHECK(std::abs(std::cyl_bessel_j(nu, bessel_zero(nu))) < 1e-13);
  }
}

TEST_CASE("reference eigenvalues") {
  CHECK(reference_eigen(ReferenceCase::HalfDiskNeumannArc).mu1 == doctest::Approx(3.38996).epsilon(2e-6));
  CHECK(reference_eigen(ReferenceCase::HalfDiskDirichletArc).mu1 == doctest::Approx(5.78319).epsilon(2e-6));
  CHECK(reference_eigen(ReferenceCase::Sector, kPi / 4).mu1 == doctest::Approx(9.32836).epsilon(2e-6));
  // A sector of opening pi is the half-disk.
  CHECK(reference_eigen(ReferenceCase::Sector, kPi / 2).mu1 ==
        doctest::Approx(reference_eigen(ReferenceCase::HalfDiskNeumannArc).mu1));
  for (auto c : kCases) {
    const auto r = reference_eigen(c);
    CHECK(r.psi1(r.argmax) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(reference_eigen(ReferenceCase::Sector, 2.0), DomainError);
  CHECK_THROWS_AS(reference_domain(ReferenceCase::Sector, 0.0), DomainError);
}

TEST_CASE("half-disk mesh topology and tags") {
  const auto d = geometry::half_disk(DirichletPart::Straight);
  const auto m = mesh_domain(d, 0.1);
  const auto a = audit_mesh(m, &d);
  CHECK(a.conforming);
  CHECK(a.all_boundary_tagged);
  CHECK(a.positive_areas);
  CHECK(a.euler == 1);
  CHECK(a.boundary_band < 1e-12);
  CHECK_THROWS_AS(mesh_domain(d, 0.0), DomainError);
  CHECK_THROWS_AS(mesh_domain(d, 1.0), DomainError);
}

TEST_CASE("sector mesh: Dirichlet radii and Neumann arc") {
  const auto d = geometry::sector(kPi / 4, DirichletPart::Straight);
  const auto m = mesh_domain(d, 0.05);
  int on_left = 0, on_right = 0;
  for (const auto& e : m.boundary_edges) {
    const Point a = m.vertices[e.a], b = m.vertices[e.b];
    if (e.tag == EdgeTag::Neumann) {
      CHECK(std::abs(std::abs(a) - 1) < 1e-14);
      CHECK(std::abs(std::abs(b) - 1) < 1e-14);
      continue;
    }
    const Point mid = 0.5 * (a + b);
    if (std::abs(std::arg(mid) - kPi / 4) < 1e-9) ++on_right;
    else if (std::abs(std::arg(mid) - 3 * kPi / 4) < 1e-9) ++on_left;
    else FAIL("Dirichlet edge off the radii");
  }
  CHECK(on_left > 0);
  CHECK(on_right > 0);
}

TEST_CASE("mesh quality audit") {
  std::vector<geometry::MixedDomain> domains = {geometry::half_disk(DirichletPart::Straight),
                                                geometry::half_disk(DirichletPart::Arc),
                                                geometry::sector(kPi / 4, DirichletPart::Straight),
                                                geometry::sector(kPi / 3, DirichletPart::Arc),
                                                geometry::lens(kPi / 3),
                                                geometry::cap(0.25)};
  for (const auto& d : domains) {
    for (double h : {0.2, 0.07, 0.03}) {
      const auto m = mesh_domain(d, h);
      const auto a = audit_mesh(m, &d);
      CHECK(a.min_angle_deg >= 20);
      CHECK(a.conforming);
      CHECK(a.all_boundary_tagged);
      CHECK(a.euler == 1);
      CHECK(a.boundary_band <= h * h);
      // Each chord of length l on a unit-radius arc cuts off about l^3 / 12.
      const double arcs = d.gamma1().length() + d.gamma2().length();
      CHECK(std::abs(m.area() - d.area()) <= arcs * h * h / 12);
    }
  }
}

TEST_CASE("mesh text round trip") {
  const auto m = mesh_domain(geometry::lens(kPi / 2), 0.2);
  std::stringstream s;
  write_mesh(m, s);
  const auto r = read_mesh(s);
  CHECK(r.h == m.h);
  REQUIRE(r.vertices.size() == m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) CHECK(r.vertices[i] == m.vertices[i]);
  CHECK(r.triangles == m.triangles);
  REQUIRE(r.boundary_edges.size() == m.boundary_edges.size());
  for (std::size_t i = 0; i < m.boundary_edges.size(); ++i) CHECK(r.boundary_edges[i].tag == m.boundary_edges[i].tag);

  std::stringstream bad("3\n0 0\n1 0\n0 1\n1\n0 1 7\n");
  CHECK_THROWS_AS(read_mesh(bad), MeshError);
  std::stringstream tag("3\n0 0\n1 0\n0 1\n1\n0 1 2\n0 1 ROBIN\n");
  CHECK_THROWS_AS(read_mesh(tag), MeshError);
}

TEST_CASE("element matrices") {
  const auto k = element_stiffness({0, 0}, {1, 0}, {0, 1});
  Eigen::Matrix3d expected;
  expected << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
  CHECK((k - expected).norm() < 1e-15);
  CHECK(k.rowwise().sum().norm() < 1e-15);
  CHECK(element_mass({0, 0}, {1, 0}, {0, 1}).sum() == doctest::Approx(0.5));
  CHECK_THROWS_AS(element_stiffness({0, 0}, {1, 0}, {2, 0}), MeshError);
  CHECK_THROWS_AS(element_mass({0, 0}, {0, 1}, {1, 0}), MeshError);
}

TEST_CASE("mass matrix integrates to the mesh area") {
  const auto m = retag(mesh_domain(geometry::cap(0.25), 0.05), EdgeTag::Neumann);
  const auto s = assemble(m);
  CHECK(s.free_vertices.size() == m.vertices.size());
  CHECK(std::abs(Eigen::MatrixXd(s.M).sum() - m.area()) < 1e-10);
  CHECK((Eigen::MatrixXd(s.K) * Eigen::VectorXd::Ones(s.K.rows())).norm() < 1e-10);
  CHECK_THROWS_AS(smallest_eigenpair(s), NumericalError);
}

TEST_CASE("all-Dirichlet half-disk recovers j11^2") {
  const auto m = retag(mesh_domain(geometry::half_disk(DirichletPart::Straight), 0.02), EdgeTag::Dirichlet);
  const double j = bessel_zero(1);
  CHECK(std::abs(smallest_eigenpair(assemble(m)).mu1 / (j * j) - 1) < 0.02);
}

TEST_CASE("ground states of the reference cases") {
  const double tol[] = {0.01, 0.01, 0.015};
  for (int c = 0; c < 3; ++c) {
    CAPTURE(c);
    const auto d = reference_domain(kCases[c]);
    const auto ref = reference_eigen(kCases[c]);
    const auto m = mesh_domain(d, 0.02);
    const auto s = assemble(m);
    const auto p = smallest_eigenpair(s, 1e-9);
    CHECK(std::abs(p.mu1 / ref.mu1 - 1) < tol[c]);
    CHECK(p.residual < 1e-9);
    CHECK(p.mu2 > p.mu1);
    CHECK(p.psi1.minCoeff() >= -1e-10);
    const auto dir = m.dirichlet_flags();
    for (std::size_t v = 0; v < dir.size(); ++v) {
      if (dir[v]) CHECK(p.psi1[v] == 0.0);
    }
    Eigen::VectorXd x(s.free_vertices.size());
    for (std::size_t k = 0; k < s.free_vertices.size(); ++k) x[k] = p.psi1[s.free_vertices[k]];
    CHECK(x.dot(s.M * x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(x.dot(s.K * x) / x.dot(s.M * x) - p.mu1) < 1e-8 * p.mu1);
    // Shape against the separated solution.
    const double top = p.psi1.maxCoeff();
    double err = 0;
    for (std::size_t v = 0; v < m.vertices.size(); ++v) err = std::max(err, std::abs(p.psi1[v] / top - ref.psi1(m.vertices[v])));
    CHECK(err < 1e-2);
  }
}

TEST_CASE("eigenvalues converge monotonically under refinement") {
  for (auto c : kCases) {
    const auto d = reference_domain(c);
    std::vector<double> mu;
    for (double h : {0.08, 0.04, 0.02}) mu.push_back(smallest_eigenpair(assemble(mesh_domain(d, h))).mu1);
    CHECK(std::abs(mu[1] - mu[2]) < std::abs(mu[0] - mu[1]));
  }
}

TEST_CASE("hot spots lie on gamma1 at the analytic maximizer") {
  const double h = 0.02;
  for (auto c : kCases) {
    const auto d = reference_domain(c);
    const auto m = mesh_domain(d, h);
    const auto p = smallest_eigenpair(assemble(m));
    const auto spot = hotspot_locate(p, m);
    CHECK(spot.dist_to_gamma1 <= h);
    CHECK(std::abs(spot.argmax - reference_eigen(c).argmax) <= h);
    CHECK(spot.value >= p.psi1.maxCoeff() - 1e-12);
    const auto j = eigen_report(p, spot, h);
    CHECK(j.at("mu1").get<double>() == p.mu1);
    CHECK(j.at("argmax").size() == 2);
    CHECK(j.at("h").get<double>() == h);
    CHECK(j.contains("residual"));
    CHECK(j.contains("dist_to_gamma1"));
  }
}

TEST_CASE("quadratic refinement finds an interior maximum") {
  const auto d = geometry::half_disk(DirichletPart::Straight);
  const auto m = mesh_domain(d, 0.05);
  EigenPair p;
  p.psi1.resize(static_cast<Eigen::Index>(m.vertices.size()));
  const Point peak(0.013, 0.421);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) p.psi1[v] = 1 - std::norm(m.vertices[v] - peak);
  const auto s = hotspot_locate(p, m);
  CHECK(std::abs(s.argmax - peak) < 1e-10);
  CHECK(s.value == doctest::Approx(1.0));
  CHECK(s.dist_to_gamma1 == doctest::Approx(1 - std::abs(peak)).epsilon(1e-2));
}

TEST_CASE("ground states increase along the curve families") {
  for (auto c : kCases) {
    const auto d = reference_domain(c);
    const auto m = mesh_domain(d, 0.02);
    const MeshField f(m, smallest_eigenpair(assemble(m)).psi1);
    for (const auto& curve : curves_for(c, d)) {
      const auto mono = monotonicity_along_curve(f, curve);
      CHECK(mono.violations == 0);
    }
  }
}

TEST_CASE("ray curves and field sampling") {
  const auto swapped = geometry::half_disk(DirichletPart::Arc);
  const auto r = euclidean_ray(swapped, kPi / 3);
  CHECK(std::abs(r.samples.front()) == doctest::Approx(1.0));
  CHECK(std::abs(r.samples.back()) < 1e-12);
  const auto sector = geometry::sector(kPi / 4, DirichletPart::Straight);
  const auto s = euclidean_ray(sector, kPi / 2, 10);
  CHECK(std::abs(s.samples.back() - Point(0, 1)) < 1e-12);
  CHECK_THROWS_AS(euclidean_ray(sector, -kPi / 2), DomainError);
  CHECK_THROWS_AS(hyperbolic_ray(identity_map(), 0.0), DomainError);

  const auto m = mesh_domain(swapped, 0.1);
  const MeshField constant(m, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m.vertices.size()), 2.0));
  const auto mono = monotonicity_along_curve(constant, r);
  CHECK(mono.violations == 0);
  CHECK(mono.min_increment == 0.0);
  Eigen::VectorXd x(m.vertices.size());
  for (std::size_t v = 0; v < m.vertices.size(); ++v) x[v] = 3 * m.vertices[v].real() - m.vertices[v].imag();
  const MeshField linear(m, x);
  CHECK(linear({0.2, 0.3}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(linear({0.0, -0.5}), DomainError);
  CHECK_THROWS_AS(linear({3.0, 3.0}), DomainError);
}

TEST_CASE("expansion crosscheck guards and arithmetic") {
  const auto m = mesh_domain(geometry::half_disk(DirichletPart::Straight), 0.04);
  const auto p = smallest_eigenpair(assemble(m));
  const MeshField f(m, p.psi1);
  const double t = 1.0, mass = integrate(m, p.psi1);
  stochastic::SurvivalEstimate e;
  e.start = Eigen::Vector2d(0.1, 0.5);
  e.t = 2 * t;
  e.potential = "one";
  e.stderr_ = 1e-3;
  e.value = std::exp(-p.mu1 * t) * f({0.1, 0.5}) * mass + 2e-3;
  const auto x = expansion_crosscheck(m, p, {e}, t);
  CHECK(x.max_deviation == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(x.gap_factor < 0.05);
  CHECK(expansion_crosscheck(m, p, {e}, t, {std::sqrt(3.0) * 1e-3}).max_deviation == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(expansion_crosscheck(m, p, {e}, 0.0), DomainError);
  CHECK_THROWS_WITH(expansion_crosscheck(m, p, {e}, 0.2), "spectral gap too small at given t");
  auto w = e;
  w.potential = "|f'|^2";
  CHECK_THROWS_AS(expansion_crosscheck(m, p, {w}, t), DomainError);
  auto late = e;
  late.t = t;
  CHECK_THROWS_AS(expansion_crosscheck(m, p, {late}, t), DomainError);
}
