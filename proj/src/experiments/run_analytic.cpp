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

// GEOMETRY_CHECK and MAP_BUILD.

#include <cmath>
#include <limits>
#include <random>

#include "hotspots/conformal/convexity.hpp"
#include "hotspots/conformal/reflect.hpp"
#include "hotspots/geometry/symmetrize.hpp"
#include "hotspots/stochastic/philox.hpp"
#include "runners.hpp"

namespace hotspots::experiments::detail {

namespace {

Point random_point_in(const geometry::MixedDomain& d, stochastic::Philox4x32& rng) {
  const auto [lo, hi] = d.bounding_box();
  std::uniform_real_distribution<double> ux(lo.real(), hi.real()), uy(lo.imag(), hi.imag());
  for (;;) {
    const Point z(ux(rng), uy(rng));
    if (d.inside(z)) return z;
  }
}

}  // namespace

void run_geometry_check(Context& ctx) {
  const int arc_checks = param(ctx.cfg, "arc_checks", 1000);
  const int samples = param(ctx.cfg, "involution_samples", 1000);
  auto csv = ctx.open("geometry.csv");
  csv << "scenario_id,domain,check,value,pass\n";
  const auto row = [&](const std::string& label, const std::string& check, double value, bool pass) {
    csv << csv_row({ctx.cfg.id, label, check, num(value), pass ? "1" : "0"});
  };

  for (std::size_t i = 0; i < ctx.cfg.domains.size(); ++i) {
    const auto& spec = ctx.cfg.domains[i];
    if (!spec.domain) throw ConfigError("GEOMETRY_CHECK needs mixed domains");
    const auto& d = *spec.domain;
    const std::string tag = "[" + spec.label + "]";
    stochastic::Philox4x32 rng(ctx.cfg.seed, i);

    const auto [a0, a1] = geometry::corner_angles(d);
    const bool corners = geometry::corner_hypothesis_holds(d);
    row(spec.label, "max_corner_angle", std::max(a0, a1), corners);
    ctx.check("corner_angles" + tag, "geometry: corner angles at most pi/2", corners);

    if (d.arc_role() == geometry::ArcRole::Gamma2IsArc) {
      const auto s = geometry::symmetrize_domain(d);
      const auto conv = geometry::is_convex(s.full_boundary);
      row(spec.label, "symmetrized_convex", conv.convex ? 1 : 0, conv.convex);
      ctx.check("symmetrized_convex" + tag, "geometry: symmetrized domain is convex", conv.convex,
                s.clipped ? "clipped at radius " + num(s.clip_radius) : "bounded");
    }

    // Random pairs: z1 in D, z2 in D or (one time in five) on gamma2.
    std::uniform_real_distribution<double> u(0, 1);
    int admissible = 0, contained = 0, draws = 0;
    while (admissible < arc_checks) {
      if (++draws > 1000 * arc_checks) throw NumericalError("too few admissible origin-arc pairs");
      const Point z1 = random_point_in(d, rng);
      const Point z2 = u(rng) < 0.2 ? d.gamma2().at(0.05 + 0.9 * u(rng)) : random_point_in(d, rng);
      if (!geometry::origin_arc_admissible(d, z1, z2)) continue;
      ++admissible;
      contained += geometry::origin_arc_contained(d, z1, z2);
    }
    row(spec.label, "origin_arcs_contained", contained, contained == admissible);
    ctx.metric("geometry.origin_arcs_contained" + tag, contained);
    ctx.check("origin_arcs" + tag, "geometry: admissible origin arcs stay in D union gamma2", contained == admissible,
              std::to_string(contained) + "/" + std::to_string(admissible));

    const auto& c = d.arc_circle();
    double involution = 0, fixed = 0;
    for (int k = 0; k < samples; ++k) {
      const Point z = random_point_in(d, rng);
      involution = std::max(involution, std::abs(geometry::invert_point(c, geometry::invert_point(c, z)) - z));
      const Point on = c.center + std::polar(c.radius, 2 * kPi * u(rng));
      fixed = std::max(fixed, std::abs(geometry::invert_point(c, on) - on));
    }
    row(spec.label, "involution_error", involution, involution <= 1e-12);
    row(spec.label, "fixed_circle_error", fixed, fixed <= 1e-12);
    ctx.metric("geometry.involution_error" + tag, involution);
    ctx.metric("geometry.fixed_circle_error" + tag, fixed);
    ctx.check("inversion_involution" + tag, "geometry: inversion is an involution", involution <= 1e-12);
    ctx.check("inversion_fixed_circle" + tag, "geometry: inversion fixes its circle", fixed <= 1e-12);
  }
}

void run_map_build(Context& ctx) {
  const int nodes = param(ctx.cfg, "boundary_nodes", 512);
  const double tol = param(ctx.cfg, "tol", 1e-8);
  const int rays = param(ctx.cfg, "rays", 64);
  const int radii = param(ctx.cfg, "radii", 64);
  const double seam_tol = param(ctx.cfg, "seam_tol", 1e-6);
  auto csv = ctx.open("radial.csv");
  csv << "scenario_id,domain,theta,r,r_abs_fprime\n";

  for (const auto& spec : ctx.cfg.domains) {
    const std::string tag = "[" + spec.label + "]";
    const auto map = build_map(spec, nodes, tol);
    ctx.write_json("map_" + spec.label + ".json", conformal::map_to_json(map));
    const auto& diag = map.diagnostics;
    ctx.metric("map.boundary_error" + tag, diag.boundary_error);
    ctx.metric("map.nodes" + tag, diag.nodes);
    ctx.check("boundary_distance" + tag, "conformal: boundary maps onto the target boundary",
              diag.boundary_error <= tol, num(diag.boundary_error));

    if (spec.target && spec.source.value("kind", "") == "disk") {
      // The disk map is affine: c0 = center, c1 = radius, nothing else.
      const auto& c = map.coefficients();
      const auto& src = spec.source;
      const auto center = src.value("center", nlohmann::json::array({0.0, 0.0}));
      const Point c0(center.at(0).get<double>(), center.at(1).get<double>());
      double rest = std::abs(c[0] - c0);
      for (Eigen::Index k = 2; k < c.size(); ++k) rest += std::abs(c[k]);
      const double lead = std::abs(c[1] - src.value("radius", 1.0));
      ctx.metric("map.nonaffine_mass" + tag, rest);
      ctx.check("affine_recovery" + tag, "conformal: disk targets give affine maps", rest < 1e-10 && lead < 1e-10,
                "sum " + num(rest) + ", |c1 - R| " + num(lead));
    }

    const auto r = conformal::interior_radii(radii);
    double min_inc = 1e300;
    for (int k = 0; k < rays; ++k) {
      const double theta = 2 * kPi * k / rays;
      const auto prof = conformal::radial_profile_check(map, theta, r);
      min_inc = std::min(min_inc, prof.min_increment);
      for (int j = 0; j < radii; ++j) csv << csv_row({ctx.cfg.id, spec.label, num(theta), num(r[j]), num(prof.profile[j])});
    }
    ctx.metric("map.radial_min_increment" + tag, min_inc);
    ctx.check("radial_monotone" + tag, "conformal: r|f'| nondecreasing along radii", min_inc >= -1e-8, num(min_inc));

    if (map.symmetry()) {
      const auto refl = conformal::schwarz_reflect(map, *map.symmetry(), std::numeric_limits<double>::infinity());
      const auto seam = conformal::seam_report(refl);
      ctx.metric("map.seam_derivative_jump" + tag, seam.derivative_jump);
      ctx.check("seam_jump" + tag, "conformal: reflected map is analytic across the seam",
                seam.derivative_jump < seam_tol, num(seam.derivative_jump));
    }
  }
}

}  // namespace hotspots::experiments::detail
