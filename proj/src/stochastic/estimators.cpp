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

#include "hotspots/stochastic/estimators.hpp"

#include <cmath>
#include <vector>

#include "hotspots/stochastic/parallel.hpp"

namespace hotspots::stochastic {

namespace {

enum class Outcome : unsigned char { Miss, Hit, Unresolved };

SurvivalEstimate binomial(const std::vector<Outcome>& outcomes, const Eigen::VectorXd& start, double t,
                          std::string potential) {
  SurvivalEstimate e;
  e.n = outcomes.size();
  if (e.n == 0) throw DomainError("no samples");
  std::size_t hits = 0;
  for (Outcome o : outcomes) {
    hits += o == Outcome::Hit;
    e.unresolved += o == Outcome::Unresolved;
  }
  e.value = static_cast<double>(hits) / e.n;
  e.stderr_ = std::sqrt(e.value * (1 - e.value) / e.n);
  e.start = start;
  e.t = t;
  e.potential = std::move(potential);
  return e;
}

}  // namespace

SurvivalEstimate functional_tail_estimate(const Eigen::VectorXd& start, const conformal::Potential& v, double t,
                                          std::size_t n, const SimConfig& config, RunSeed seed, int threads) {
  if (n == 0) throw DomainError("no samples");
  config.validate();
  std::vector<Outcome> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    BallWalker w(config, start, {seed.seed, seed.stream_offset + i});
    if (w.killed()) {
      out[i] = Outcome::Miss;
      return;
    }
    double integral = 0;
    double v_prev = v(w.position());
    Eigen::VectorXd end(config.dimension);
    while (w.time() < config.max_time - 1e-12) {
      w.step();
      if (w.killed()) {
        const double f = (*w.kill_time() - (w.time() - config.dt)) / config.dt;
        end = w.previous() + f * (w.position() - w.previous());
        integral += 0.5 * f * config.dt * (v_prev + v(end));
        out[i] = integral > t ? Outcome::Hit : Outcome::Miss;
        return;
      }
      const double v_cur = v(w.position());
      integral += 0.5 * config.dt * (v_prev + v_cur);
      v_prev = v_cur;
      if (integral > t) {
        out[i] = Outcome::Hit;
        return;
      }
    }
    out[i] = Outcome::Unresolved;
  });
  return binomial(out, start, t, v.name);
}

SurvivalEstimate survival_via_conformal(const geometry::MixedDomain& domain, const conformal::AnalyticMap& f,
                                        Point w, double t, std::size_t n, const SimConfig& config, RunSeed seed,
                                        int threads) {
  if (!(w.imag() > 0) || !(std::abs(w) < 1)) throw DomainError("w must lie in the upper half-disk");
  const double band = 1e-6 * domain.diameter();
  for (double x : {-0.5, 0.0, 0.5}) {
    if (domain.gamma2().distance(f(x, 0)) > band) throw DomainError("map does not send (-1, 1) onto gamma2");
  }
  if (!domain.inside(f(Complex(0, 0.5), 0))) throw DomainError("map does not send the upper half-disk into D");
  SimConfig cfg = config;
  cfg.dimension = 2;
  cfg.killing = KillingKind::Hyperplane;
  const auto v = conformal::potential_from_map(f, "|f'|^2");
  return functional_tail_estimate(Eigen::Vector2d(w.real(), w.imag()), v, t, n, cfg, seed, threads);
}

SurvivalEstimate feynman_kac(const Eigen::VectorXd& start, const conformal::Potential& v, double t, std::size_t n,
                             const SimConfig& config, RunSeed seed, int threads) {
  if (!(t > 0)) throw DomainError("t must be positive");
  if (n == 0) throw DomainError("no samples");
  config.validate();
  std::vector<double> out(n, 0.0);
  const auto steps = static_cast<long>(std::llround(t / config.dt));
  parallel_for(n, threads, [&](std::size_t i) {
    BallWalker w(config, start, {seed.seed, seed.stream_offset + i});
    if (w.killed()) return;
    double integral = 0, v_prev = v(w.position());
    for (long k = 0; k < steps; ++k) {
      w.step();
      if (w.killed()) return;
      const double v_cur = v(w.position());
      integral += 0.5 * config.dt * (v_prev + v_cur);
      v_prev = v_cur;
    }
    out[i] = std::exp(-integral);
  });
  SurvivalEstimate e;
  e.n = n;
  double mean = 0;
  for (double x : out) mean += x;
  mean /= n;
  double var = 0;
  for (double x : out) var += (x - mean) * (x - mean);
  e.value = mean;
  e.stderr_ = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
  e.start = start;
  e.t = t;
  e.potential = v.name;
  return e;
}

SurvivalEstimate direct_survival(const geometry::MixedDomain& domain, Point z, double t, std::size_t n, double dt,
                                 bool bridge_correction, RunSeed seed, int threads) {
  if (n == 0) throw DomainError("no samples");
  std::vector<Outcome> out(n);
  std::vector<unsigned char> corner(n, 0);
  const auto steps = static_cast<long>(std::llround(t / dt));
  parallel_for(n, threads, [&](std::size_t i) {
    DomainWalker w(domain, z, dt, bridge_correction, {seed.seed, seed.stream_offset + i});
    for (long k = 0; k < steps && !w.killed(); ++k) w.step();
    out[i] = w.killed() ? Outcome::Miss : Outcome::Hit;
    corner[i] = w.corner_kill();
  });
  auto e = binomial(out, Eigen::Vector2d(z.real(), z.imag()), t, "one");
  for (unsigned char c : corner) e.corner_kills += c;
  return e;
}

}  // namespace hotspots::stochastic
