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

// EIG_SOLVE, HOTSPOT_VERIFY and CROSSCHECK.

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hotspots/spectral/analysis.hpp"
#include "hotspots/spectral/fem.hpp"
#include "hotspots/spectral/mesh.hpp"
#include "hotspots/stochastic/estimators.hpp"
#include "runners.hpp"

namespace hotspots::experiments::detail {

namespace {

using spectral::ReferenceCase;

std::vector<double> h_list(const ScenarioConfig& cfg) {
  std::vector<double> h;
  if (cfg.params.contains("h") && cfg.params.at("h").is_array()) {
    h = param(cfg, "h", std::vector<double>{});
  } else {
    h.push_back(param(cfg, "h", 0.02));
  }
  if (h.empty()) throw ConfigError("params.h is empty");
  for (double x : h) {
    if (!(x > 0)) throw ConfigError("params.h must be positive");
  }
  std::sort(h.begin(), h.end(), std::greater<>());
  return h;
}

struct Solved {
  spectral::TriMesh mesh;
  spectral::EigenPair pair;
  double seconds = 0;
};

Solved solve(const geometry::MixedDomain& d, double h, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  Solved s;
  s.mesh = spectral::mesh_domain(d, h);
  s.pair = spectral::smallest_eigenpair(spectral::assemble(s.mesh), tol);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

const geometry::MixedDomain& mixed(const DomainSpec& spec) {
  if (!spec.domain) throw ConfigError("domain '" + spec.label + "' is not a mixed domain");
  return *spec.domain;
}

/// Curves along which psi1 must increase toward gamma1: images of disk radii
/// under the identity for the Neumann-arc half-disk, Euclidean rays otherwise.
std::vector<spectral::RayCurve> curves_for(const DomainSpec& spec, int count) {
  std::vector<spectral::RayCurve> out;
  const conformal::AnalyticMap identity = [](Complex z, int order) {
    return order == 0 ? z : Complex(order == 1, 0);
  };
  for (int j = 0; j < count; ++j) {
    const double s = (j + 0.5) / count;
    switch (*spec.reference) {
      case ReferenceCase::HalfDiskNeumannArc: out.push_back(spectral::hyperbolic_ray(identity, kPi * s)); break;
      case ReferenceCase::HalfDiskDirichletArc: out.push_back(spectral::euclidean_ray(*spec.domain, kPi * s)); break;
      case ReferenceCase::Sector:
        out.push_back(spectral::euclidean_ray(*spec.domain, kPi / 2 - spec.half_angle + 2 * spec.half_angle * s));
        break;
    }
  }
  return out;
}

}  // namespace

void run_eig(Context& ctx) {
  const auto hs = h_list(ctx.cfg);
  const double tol = param(ctx.cfg, "tol", 1e-9);
  const double limit = param(ctx.cfg, "runtime_limit", 60.0);
  auto csv = ctx.open("eigen.csv");
  csv << "scenario_id,domain,h,vertices,triangles,mu1,mu2,residual,iterations,oracle,rel_error\n";

  for (const auto& spec : ctx.cfg.domains) {
    const std::string tag = "[" + spec.label + "]";
    const auto& d = mixed(spec);
    std::optional<double> oracle;
    double oracle_tol = 0;
    if (spec.reference) {
      oracle = spectral::reference_eigen(*spec.reference, spec.half_angle).mu1;
      oracle_tol = param(ctx.cfg, "oracle_tol", *spec.reference == ReferenceCase::Sector ? 0.015 : 0.01);
    }
    std::vector<double> mu;
    Solved last;
    for (double h : hs) {
      last = solve(d, h, tol);
      mu.push_back(last.pair.mu1);
      const double rel = oracle ? std::abs(last.pair.mu1 - *oracle) / *oracle : std::nan("");
      csv << csv_row({ctx.cfg.id, spec.label, num(h), std::to_string(last.mesh.vertices.size()),
                      std::to_string(last.mesh.triangles.size()), num(last.pair.mu1), num(last.pair.mu2),
                      num(last.pair.residual), std::to_string(last.pair.iterations), oracle ? num(*oracle) : "",
                      oracle ? num(rel) : ""});
    }
    const double h = hs.back();
    {
      auto mesh_out = ctx.open("mesh_" + spec.label + ".txt");
      spectral::write_mesh(last.mesh, mesh_out);
    }
    ctx.write_json("eigen_" + spec.label + ".json",
                   spectral::eigen_report(last.pair, spectral::hotspot_locate(last.pair, last.mesh), h));
    ctx.metric("eig.mu1" + tag, last.pair.mu1);
    ctx.metric("eig.seconds" + tag, last.seconds);
    ctx.check("eigen_residual" + tag, "spectral: eigenpair residual below tolerance", last.pair.residual <= tol,
              num(last.pair.residual));
    if (oracle) {
      const double rel = std::abs(last.pair.mu1 - *oracle) / *oracle;
      ctx.metric("eig.rel_error" + tag, rel);
      ctx.check("oracle_agreement" + tag, "spectral: mu1 matches the Bessel oracle", rel <= oracle_tol,
                "mu1 " + num(last.pair.mu1) + " vs " + num(*oracle));
    }
    if (mu.size() >= 3) {
      bool ok = true;
      for (std::size_t k = 2; k < mu.size(); ++k) ok = ok && std::abs(mu[k] - mu[k - 1]) < std::abs(mu[k - 1] - mu[k - 2]);
      ctx.check("refinement_monotone" + tag, "spectral: |mu1(h) - mu1(h/2)| decreases as h halves", ok);
    }
    ctx.check("runtime" + tag, "spectral: solve within the runtime target", last.seconds < limit,
              num(last.seconds) + " s");
  }
}

void run_hotspot(Context& ctx) {
  const double h = h_list(ctx.cfg).back();
  const int count = param(ctx.cfg, "curves", 16);
  const double rel_tol = param(ctx.cfg, "rel_tol", 1e-8);
  auto csv = ctx.open("curves.csv");
  csv << "scenario_id,domain,curve,kind,theta,violations,min_increment\n";

  for (const auto& spec : ctx.cfg.domains) {
    const std::string tag = "[" + spec.label + "]";
    const auto s = solve(mixed(spec), h, param(ctx.cfg, "tol", 1e-9));
    const auto spot = spectral::hotspot_locate(s.pair, s.mesh);
    ctx.write_json("eigen_" + spec.label + ".json", spectral::eigen_report(s.pair, spot, h));
    ctx.metric("hotspot.dist_to_gamma1" + tag, spot.dist_to_gamma1);
    ctx.check("hotspot_on_gamma1" + tag, "spectral: argmax psi1 within h of gamma1", spot.dist_to_gamma1 <= h,
              num(spot.dist_to_gamma1));
    if (!spec.reference) continue;

    const Point expected = spectral::reference_eigen(*spec.reference, spec.half_angle).argmax;
    const double off = std::abs(spot.argmax - expected);
    ctx.metric("hotspot.dist_to_maximizer" + tag, off);
    ctx.check("hotspot_at_maximizer" + tag, "spectral: argmax psi1 within h of the analytic maximizer", off <= h,
              num(off));

    const spectral::MeshField field(s.mesh, s.pair.psi1);
    int violations = 0;
    const auto curves = curves_for(spec, count);
    for (std::size_t j = 0; j < curves.size(); ++j) {
      const auto& curve = curves[j];
      const auto m = spectral::monotonicity_along_curve(field, curve, rel_tol);
      violations += m.violations;
      csv << csv_row({ctx.cfg.id, spec.label, std::to_string(j),
                      curve.kind == spectral::RayKind::HyperbolicGammaTheta ? "gamma_theta" : "r_theta",
                      num(curve.theta), std::to_string(m.violations), num(m.min_increment)});
    }
    ctx.metric("hotspot.curve_violations" + tag, violations);
    ctx.check("curve_monotonicity" + tag, "spectral: psi1 monotone along the curve family", violations == 0,
              std::to_string(violations) + " violations on " + std::to_string(count) + " curves");
  }
}

void run_crosscheck(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& spec = cfg.domains[0];
  const auto& d = mixed(spec);
  const auto hs = h_list(cfg);
  const auto probes = point_list(cfg.params.value("probes", nlohmann::json::array()), "params.probes");
  const bool bridge = param(cfg, "bridge", true);
  const double bound = param(cfg, "max_deviation", 3.0);
  const auto s = solve(d, hs.back(), param(cfg, "tol", 1e-9));
  ctx.metric("crosscheck.mu1", s.pair.mu1);

  auto est_csv = ctx.open("estimates.csv");
  est_csv << estimate_header(2);
  auto csv = ctx.open("crosscheck.csv");
  csv << "scenario_id,probe,x,y,t,process_time,estimate,stderr,predicted,deviation\n";
  for (std::size_t k = 0; k < cfg.t_grid.size(); ++k) {
    const double t = cfg.t_grid[k];
    const std::string tag = "[t=" + num(t) + "]";
    std::vector<stochastic::SurvivalEstimate> est;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      // The eigenvalue is that of -Delta; Brownian motion with generator
      // Delta/2 reaches heat time t at process time 2t.
      est.push_back(stochastic::direct_survival(d, probes[p], 2 * t, cfg.n, cfg.dt, bridge,
                                                {cfg.seed, (k * probes.size() + p) * cfg.n}, ctx.options.threads));
      est_csv << estimate_row(cfg, Eigen::Vector2d(probes[p].real(), probes[p].imag()), std::abs(probes[p]),
                              est.back(), cfg.dt);
    }
    spectral::Crosscheck x;
    try {
      x = spectral::expansion_crosscheck(s.mesh, s.pair, est, t);
    } catch (const DomainError& e) {
      ctx.check("expansion_precondition" + tag, "spectral: higher modes negligible at t", false, e.what());
      continue;
    }
    for (std::size_t p = 0; p < probes.size(); ++p) {
      csv << csv_row({cfg.id, std::to_string(p), num(probes[p].real()), num(probes[p].imag()), num(t), num(2 * t),
                      num(est[p].value), num(est[p].stderr_), num(x.predicted[p]), num(x.deviations[p])});
    }
    ctx.metric("crosscheck.max_deviation" + tag, x.max_deviation);
    ctx.metric("crosscheck.gap_factor" + tag, x.gap_factor);
    ctx.check("expansion_consistency" + tag, "spectral: Monte Carlo survival matches the ground-state expansion",
              x.max_deviation < bound, num(x.max_deviation) + " combined stderr");
  }
}

}  // namespace hotspots::experiments::detail
