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

// COUPLING_RUN, TAIL_MONOTONE and SURVIVAL_FIELD.

#include <cmath>
#include <memory>
#include <optional>

#include "hotspots/stochastic/coupling.hpp"
#include "hotspots/stochastic/estimators.hpp"
#include "hotspots/stochastic/parallel.hpp"
#include "runners.hpp"

namespace hotspots::experiments::detail {

namespace {

Eigen::VectorXd vector_param(const ScenarioConfig& cfg, const char* name, int dim) {
  if (!cfg.params.contains(name)) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[dim - 1] = 1;
    return e;
  }
  const auto v = param(cfg, name, std::vector<double>{});
  if (static_cast<int>(v.size()) != dim) throw ConfigError(std::string("params.") + name + " has the wrong dimension");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), dim);
}

std::string opt(const std::optional<double>& x) { return x ? num(*x) : ""; }

bool within_bounds(const stochastic::SurvivalEstimate& e) {
  return e.value - 3 * e.stderr_ >= -0.01 && e.value + 3 * e.stderr_ <= 1.01;
}

double combined(const stochastic::SurvivalEstimate& a, const stochastic::SurvivalEstimate& b) {
  return std::hypot(a.stderr_, b.stderr_);
}

/// Survival in t: each later estimate at most 3 combined stderr above the earlier one.
bool nonincreasing_in_t(const std::vector<stochastic::SurvivalEstimate>& row) {
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k].value > row[k - 1].value + 3 * combined(row[k], row[k - 1])) return false;
  }
  return true;
}

}  // namespace

void run_coupling(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto zeta_v = param(cfg, "zeta", std::vector<double>{});
  if (zeta_v.size() < 2) throw ConfigError("COUPLING_RUN needs params.zeta");
  const Eigen::VectorXd zeta = Eigen::Map<const Eigen::VectorXd>(zeta_v.data(), zeta_v.size());
  stochastic::CouplingSpec spec{zeta, cfg.r_grid[0], cfg.r_grid[1]};
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("coupling spec: ") + e.what());
  }

  stochastic::SimConfig sim;
  sim.dimension = static_cast<int>(zeta.size());
  sim.dt = cfg.dt;
  sim.max_time = param(cfg, "max_time", 1.0);
  const std::string killing = param(cfg, "killing", std::string("hyperplane"));
  std::optional<geometry::StarlikeResult> star;
  if (killing == "curve") {
    if (cfg.domains.empty() || !cfg.domains[0].domain) throw ConfigError("curve killing needs a domain");
    auto d = std::make_shared<const geometry::MixedDomain>(*cfg.domains[0].domain);
    try {
      star = geometry::is_starlike_complement(*d);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("curve killing: ") + e.what());
    }
    if (!star->certificate) throw ConfigError("killing domain fails the starlike-complement test");
    sim.killing = stochastic::KillingKind::Curve;
    sim.domain = d;
  } else if (killing != "hyperplane") {
    throw ConfigError("params.killing must be hyperplane or curve");
  }
  const double cap = param(cfg, "max_time_cap", 64.0);
  const double tol = param(cfg, "tol_factor", 5.0) * std::sqrt(cfg.dt);
  const double min_fraction = param(cfg, "min_fraction", 0.99);
  const auto v = make_potential(cfg.potential);
  if (v.dimension != 0 && v.dimension != sim.dimension) throw ConfigError("potential dimension differs from zeta");

  struct Row {
    std::optional<double> tau, tau_tilde;
    double alpha = 0, fb = 0, fc = 0;
    bool ordering = false, killing_order = false, invariants = false;
  };
  std::vector<Row> rows(cfg.n);
  stochastic::parallel_for(cfg.n, ctx.options.threads, [&](std::size_t i) {
    const auto s = stochastic::run_coupled(spec, v, sim, {cfg.seed, i}, cap);
    Row& r = rows[i];
    r.tau = s.tau;
    r.tau_tilde = s.tau_tilde;
    r.alpha = s.alpha_tau_tilde;
    r.fb = s.functional_base;
    r.fc = s.functional_coupled;
    r.ordering = stochastic::coupled_ordering_check(s, tol).holds;
    if (star) r.killing_order = stochastic::killing_order_check(s, *star->certificate, tol);

    bool ok = (s.coupled.col(0) - spec.r2 * spec.zeta).norm() < 1e-12 &&
              s.coupled.colwise().norm().maxCoeff() <= 1 + 1e-12;
    for (Eigen::Index k = 0; k < s.M.size() && ok; ++k) {
      ok = s.M[k] >= spec.r1 / spec.r2 - 1e-15 && s.M[k] <= 1 + 1e-12 && s.A[k] >= s.base_times[k] - 1e-12 &&
           std::abs(s.alpha_at(s.A[k]) - s.base_times[k]) <= sim.dt && (k == 0 || (s.M[k] >= s.M[k - 1] && s.A[k] > s.A[k - 1]));
    }
    r.invariants = ok;
  });

  auto csv = ctx.open("coupled.csv");
  csv << "path_index,tau,tau_tilde,alpha_tau_tilde,functional_base,functional_coupled,ordering_holds\n";
  std::size_t ordering = 0, killing_order = 0, invariants = 0;
  double slack = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    csv << csv_row({std::to_string(i), opt(r.tau), opt(r.tau_tilde), num(r.alpha), num(r.fb), num(r.fc),
                    r.ordering ? "1" : "0"});
    ordering += r.ordering;
    killing_order += r.killing_order;
    invariants += r.invariants;
    slack += r.fc - r.fb;
  }
  const double n = static_cast<double>(cfg.n);
  const auto fraction = [&](std::size_t bad) {
    const double p = bad / n;
    return std::make_pair(p, std::sqrt(p * (1 - p) / n));
  };
  const auto [pv, pe] = fraction(cfg.n - ordering);
  ctx.metric("coupling.ordering_violation_fraction", pv, pe);
  ctx.metric("coupling.mean_slack", slack / n);
  ctx.check("ordering", "stochastic: coupled functionals ordered within 5 sqrt(dt)", ordering >= min_fraction * n,
            std::to_string(ordering) + "/" + std::to_string(cfg.n) + " paths");
  ctx.check("coupling_invariants", "stochastic: M, A, alpha and B~ path invariants", invariants == cfg.n,
            std::to_string(invariants) + "/" + std::to_string(cfg.n) + " paths");
  if (star) {
    const auto [kv, ke] = fraction(cfg.n - killing_order);
    ctx.metric("coupling.killing_order_violation_fraction", kv, ke);
    ctx.check("killing_order", "stochastic: tau <= alpha(tau~) <= tau~ within 5 sqrt(dt)",
              killing_order >= min_fraction * n, std::to_string(killing_order) + "/" + std::to_string(cfg.n) + " paths");
  }
}

void run_tail(Context& ctx) {
  const auto& cfg = ctx.cfg;
  stochastic::SimConfig sim;
  sim.dimension = param(cfg, "dimension", 2);
  if (sim.dimension < 2) throw ConfigError("params.dimension must be >= 2");
  sim.dt = cfg.dt;
  sim.max_time = param(cfg, "max_time", 8 * cfg.t_grid.back());
  sim.bridge_correction = param(cfg, "bridge", true);
  Eigen::VectorXd dir = vector_param(cfg, "direction", sim.dimension);
  if (!(dir.norm() > 0)) throw ConfigError("params.direction must be nonzero");
  dir.normalize();
  const auto v = make_potential(cfg.potential);
  const bool separation = param(cfg, "require_separation", true);
  const double z = param(cfg, "z", 1.959963984540054);

  auto csv = ctx.open("estimates.csv");
  csv << estimate_header(sim.dimension);
  // est[i][k]: radius i, time k. Radius i uses paths [i N, (i + 1) N).
  std::vector<std::vector<stochastic::SurvivalEstimate>> est(cfg.r_grid.size());
  std::size_t unresolved = 0;
  bool bounds = true;
  for (std::size_t i = 0; i < cfg.r_grid.size(); ++i) {
    const Eigen::VectorXd start = cfg.r_grid[i] * dir;
    for (double t : cfg.t_grid) {
      est[i].push_back(stochastic::functional_tail_estimate(start, v, t, cfg.n, sim, {cfg.seed, i * cfg.n},
                                                            ctx.options.threads));
      const auto& e = est[i].back();
      csv << estimate_row(cfg, start, cfg.r_grid[i], e, cfg.dt);
      unresolved += e.unresolved;
      bounds = bounds && within_bounds(e);
      ctx.metric("tail.estimate[r=" + num(cfg.r_grid[i]) + ",t=" + num(t) + "]", e.value, e.stderr_);
    }
  }
  ctx.check("estimate_bounds", "stochastic: estimate +- 3 stderr within [-0.01, 1.01]", bounds);
  ctx.check("resolved", "stochastic: every path decided before max_time", unresolved == 0,
            std::to_string(unresolved) + " unresolved");

  for (std::size_t k = 0; k < cfg.t_grid.size(); ++k) {
    const std::string tag = "[t=" + num(cfg.t_grid[k]) + "]";
    bool monotone = true;
    for (std::size_t i = 1; i < est.size(); ++i) {
      const auto& a = est[i - 1][k];
      const auto& b = est[i][k];
      // Nondecreasing in r up to overlap of the two confidence intervals.
      monotone = monotone && b.value + z * b.stderr_ >= a.value - z * a.stderr_;
    }
    ctx.check("tail_monotone_in_r" + tag, "stochastic: tail nondecreasing in r", monotone);
    if (separation) {
      const auto& lo = est.front()[k];
      const auto& hi = est.back()[k];
      const double gap = (hi.value - z * hi.stderr_) - (lo.value + z * lo.stderr_);
      ctx.metric("tail.extreme_ci_gap" + tag, gap);
      ctx.check("tail_extremes_separated" + tag, "stochastic: confidence intervals of the extreme radii disjoint",
                gap > 0, num(gap));
    }
  }
  if (cfg.t_grid.size() > 1) {
    bool ok = true;
    for (const auto& row : est) ok = ok && nonincreasing_in_t(row);
    ctx.check("nonincreasing_in_t", "stochastic: survival nonincreasing in t", ok);
  }
}

void run_survival(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& spec = cfg.domains[0];
  if (!spec.domain) throw ConfigError("SURVIVAL_FIELD needs a mixed domain");
  const auto& d = *spec.domain;
  const std::string method = param(cfg, "method", std::string("direct"));
  if (method != "direct" && method != "conformal" && method != "both") {
    throw ConfigError("params.method must be direct, conformal or both");
  }
  const bool bridge = param(cfg, "bridge", true);

  // Probes: explicit points, or a ray {theta, radii} in the parameter half-disk.
  std::vector<Point> probes;
  std::vector<double> radius;
  const bool ray = cfg.params.contains("ray");
  if (ray) {
    const auto& r = cfg.params.at("ray");
    const double theta = r.value("theta", kPi / 2);
    for (const auto& x : r.at("radii")) {
      probes.push_back(std::polar(x.get<double>(), theta));
      radius.push_back(x.get<double>());
    }
  } else {
    probes = point_list(cfg.params.value("probes", nlohmann::json::array()), "params.probes");
    for (Point p : probes) radius.push_back(std::abs(p));
  }

  conformal::AnalyticMap f = [](Complex z, int order) { return order == 0 ? z : Complex(order == 1, 0); };
  if (method != "direct" && param(cfg, "map", std::string("build")) == "build") {
    auto m = std::make_shared<conformal::PowerSeriesMap>(
        build_map(spec, param(cfg, "boundary_nodes", 512), param(cfg, "tol", 1e-8)));
    f = [m](Complex z, int order) { return m->eval(z, order); };
  }

  stochastic::SimConfig sim;
  sim.dt = cfg.dt;
  sim.max_time = param(cfg, "max_time", 8 * cfg.t_grid.back());
  sim.bridge_correction = bridge;

  auto csv = ctx.open("estimates.csv");
  csv << estimate_header(2);
  std::ofstream direct_csv;
  if (method == "both") {
    direct_csv = ctx.open("estimates_direct.csv");
    direct_csv << estimate_header(2);
  }
  const std::size_t np = probes.size(), nt = cfg.t_grid.size();
  std::vector<std::vector<stochastic::SurvivalEstimate>> main(np), direct(np);
  bool bounds = true, agree = true;
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t k = 0; k < nt; ++k) {
      const double t = cfg.t_grid[k];
      // Streams: probe p and time k use paths [(p nt + k) N, ...); the direct
      // estimates of "both" continue after all of those.
      const std::uint64_t offset = (p * nt + k) * cfg.n;
      const Point z = method == "direct" ? probes[p] : f(probes[p], 0);
      const Eigen::Vector2d start(z.real(), z.imag());
      if (method == "direct") {
        main[p].push_back(stochastic::direct_survival(d, z, t, cfg.n, cfg.dt, bridge, {cfg.seed, offset},
                                                      ctx.options.threads));
      } else {
        main[p].push_back(stochastic::survival_via_conformal(d, f, probes[p], t, cfg.n, sim, {cfg.seed, offset},
                                                             ctx.options.threads));
      }
      csv << estimate_row(cfg, start, radius[p], main[p].back(), cfg.dt);
      bounds = bounds && within_bounds(main[p].back());
      ctx.metric("survival.estimate[p=" + std::to_string(p) + ",t=" + num(t) + "]", main[p].back().value,
                 main[p].back().stderr_);
      if (method == "both") {
        direct[p].push_back(stochastic::direct_survival(d, z, t, cfg.n, cfg.dt, bridge,
                                                        {cfg.seed, (np * nt + p * nt + k) * cfg.n},
                                                        ctx.options.threads));
        direct_csv << estimate_row(cfg, start, radius[p], direct[p].back(), cfg.dt);
        const double dev = std::abs(main[p].back().value - direct[p].back().value) / combined(main[p].back(), direct[p].back());
        agree = agree && dev < 3;
      }
    }
  }
  ctx.check("estimate_bounds", "stochastic: estimate +- 3 stderr within [-0.01, 1.01]", bounds);
  if (nt > 1) {
    bool ok = true;
    for (const auto& row : main) ok = ok && nonincreasing_in_t(row);
    ctx.check("nonincreasing_in_t", "stochastic: survival nonincreasing in t", ok);
  }
  if (ray) {
    bool ok = true;
    for (std::size_t k = 0; k < nt; ++k) {
      for (std::size_t p = 1; p < np; ++p) {
        ok = ok && main[p][k].value >= main[p - 1][k].value - 3 * combined(main[p][k], main[p - 1][k]);
      }
    }
    ctx.check("increasing_along_curve", "stochastic: survival increases toward gamma1 along the curve", ok);
  }
  if (method == "both") {
    ctx.check("conformal_vs_direct", "stochastic: conformal and direct estimates agree within 3 stderr", agree);
  }
}

}  // namespace hotspots::experiments::detail
