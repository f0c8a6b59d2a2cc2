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

#include "hotspots/stochastic/simulate.hpp"

#include <cmath>
#include <string>

namespace hotspots::stochastic {

void SimConfig::validate() const {
  if (dimension < 2) throw DomainError("dimension must be at least 2");
  if (!(dt > 0)) throw DomainError("dt must be positive");
  if (!(max_time > 0) || !std::isfinite(max_time)) throw DomainError("max_time must be positive and finite");
  if (killing == KillingKind::Curve) {
    if (dimension != 2) throw DomainError("curve killing is planar");
    if (!domain) throw DomainError("curve killing needs a domain");
  }
}

KillCheck detect_killing_hyperplane(double a, double b, double dt, bool bridge_correction, Philox4x32& rng) {
  const double u = bridge_correction ? std::uniform_real_distribution<double>(0, 1)(rng) : 1.0;
  if (a <= 0) return {true, 0.0};
  if (b <= 0) return {true, a / (a - b)};
  if (bridge_correction && u < std::exp(-2 * a * b / dt)) return {true, 0.5};
  return {false, 1.0};
}

KillCheck detect_killing_hyperplane(const Eigen::VectorXd& prev, const Eigen::VectorXd& next, double dt,
                                    bool bridge_correction, Philox4x32& rng) {
  return detect_killing_hyperplane(prev[prev.size() - 1], next[next.size() - 1], dt, bridge_correction, rng);
}

double signed_distance_to_gamma2(const geometry::MixedDomain& domain, Point z) {
  const double d = domain.gamma2().distance(z);
  if (domain.inside(z)) return d;
  // Points on the reflecting part (the unit circle for ball paths) are not killed.
  const double band = 1e-9 * domain.diameter();
  return domain.gamma1().distance(z) <= band && d > band ? d : -d;
}

BallWalker::BallWalker(const SimConfig& config, const Eigen::VectorXd& start, RngId id)
    : cfg_(config), rng_(id.seed, id.path), sqrt_dt_(std::sqrt(config.dt)), x_(start), prev_(start) {
  config.validate();
  if (start.size() != config.dimension) throw DomainError("start point has the wrong dimension");
  if (start.norm() > 1 + 1e-12) throw DomainError("start point lies outside the unit ball");
  if (config.killing == KillingKind::Hyperplane && start[config.dimension - 1] <= 0) kill_time_ = 0.0;
  if (config.killing == KillingKind::Curve) {
    straight_gamma2_ = config.domain->gamma2().kind() == geometry::BoundaryCurve::Kind::Segment;
    if (signed_distance_to_gamma2(*config.domain, {start[0], start[1]}) <= 0) kill_time_ = 0.0;
  }
}

void BallWalker::step() {
  prev_ = x_;
  for (Eigen::Index i = 0; i < x_.size(); ++i) x_[i] += sqrt_dt_ * normal_(rng_);
  const double r = x_.norm();
  if (r > 1) {
    if (r > 1 + 10 * sqrt_dt_) {
      throw NumericalError("step overshoots the ball by " + std::to_string(r - 1) + "; reduce dt");
    }
    x_ *= (2 - r) / r;
  }
  t_ += cfg_.dt;
  if (kill_time_) return;
  if (cfg_.killing == KillingKind::Hyperplane) {
    const auto k = detect_killing_hyperplane(prev_, x_, cfg_.dt, cfg_.bridge_correction, rng_);
    if (k.killed) kill_time_ = t_ - cfg_.dt + k.fraction * cfg_.dt;
  } else if (cfg_.killing == KillingKind::Curve) {
    check_curve();
  }
}

void BallWalker::check_curve() {
  const auto& d = *cfg_.domain;
  const bool bridge = straight_gamma2_ && cfg_.bridge_correction;
  const double u = bridge ? std::uniform_real_distribution<double>(0, 1)(rng_) : 1.0;
  const double a = signed_distance_to_gamma2(d, {prev_[0], prev_[1]});
  const double b = signed_distance_to_gamma2(d, {x_[0], x_[1]});
  double fraction = 1;
  if (b <= 0) fraction = a / (a - b);
  else if (bridge && u < std::exp(-2 * a * b / cfg_.dt)) fraction = 0.5;
  else return;
  kill_time_ = t_ - cfg_.dt + fraction * cfg_.dt;
}

PathSample simulate_rbm(const Eigen::VectorXd& start, const SimConfig& config, RngId id) {
  BallWalker walker(config, start, id);
  const auto steps = static_cast<Eigen::Index>(std::ceil(config.max_time / config.dt - 1e-9));
  PathSample out;
  out.rng_id = id;
  out.positions.resize(config.dimension, steps + 1);
  out.positions.col(0) = start;
  out.times.reserve(steps + 1);
  out.times.push_back(0);
  Eigen::Index k = 0;
  while (k < steps &&
         !(config.stop_at_kill && walker.killed() && walker.time() >= *walker.kill_time() + config.run_after_kill)) {
    walker.step();
    ++k;
    out.positions.col(k) = walker.position();
    out.times.push_back(walker.time());
  }
  out.positions.conservativeResize(Eigen::NoChange, k + 1);
  out.killed_at = walker.kill_time();
  return out;
}

DomainWalker::DomainWalker(const geometry::MixedDomain& domain, Point start, double dt, bool bridge_correction,
                           RngId id)
    : d_(domain), rng_(id.seed, id.path), dt_(dt), sqrt_dt_(std::sqrt(dt)), x_(start) {
  if (!(dt > 0)) throw DomainError("dt must be positive");
  bridge_ = bridge_correction && domain.gamma2().kind() == geometry::BoundaryCurve::Kind::Segment;
  if (!domain.inside(start)) throw DomainError("start point lies outside D");
}

void DomainWalker::kill(double fraction) {
  kill_time_ = t_ - dt_ + fraction * dt_;
  // Diagnostic only: the killing rule is the same near the corners.
  const double corner = 2 * sqrt_dt_;
  corner_kill_ = std::abs(x_ - d_.corner0()) < corner || std::abs(x_ - d_.corner1()) < corner;
}

void DomainWalker::step() {
  if (kill_time_) return;
  const Point prev = x_;
  Point x = prev + sqrt_dt_ * Point(normal_(rng_), normal_(rng_));
  t_ += dt_;
  const double u = bridge_ ? std::uniform_real_distribution<double>(0, 1)(rng_) : 1.0;
  if (!d_.inside(x)) {
    const Point p = d_.gamma1().closest_point(x);
    const double d1 = std::abs(x - p);
    const double d2 = d_.gamma2().distance(x);
    if (d2 <= d1) {
      const double a = d_.gamma2().distance(prev);
      x_ = x;
      kill(a / (a + d2));
      return;
    }
    x = 2.0 * p - x;
    if (!d_.inside(x)) {
      ++projections_;
      x = p;
    }
  }
  x_ = x;
  if (bridge_) {
    const double a = d_.gamma2().distance(prev), b = d_.gamma2().distance(x);
    if (u < std::exp(-2 * a * b / dt_)) kill(0.5);
  }
}

}  // namespace hotspots::stochastic
