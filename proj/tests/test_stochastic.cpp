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
#include <memory>
#include <vector>

#include "doctest.h"
#include "hotspots/geometry/shapes.hpp"
#include "hotspots/stochastic/coupling.hpp"
#include "hotspots/stochastic/estimators.hpp"
#include "hotspots/stochastic/parallel.hpp"
#include "hotspots/stochastic/philox.hpp"
#include "hotspots/stochastic/simulate.hpp"

using namespace hotspots;
using namespace hotspots::stochastic;
using conformal::Potential;

namespace {

Potential quadratic_potential() {
  Potential v;
  v.name = "1+|x|^2";
  v.value = [](const Eigen::Ref<const Eigen::VectorXd>& x) { return 1 + x.squaredNorm(); };
  conformal::verify_admissible(v);
  return v;
}

}  // namespace

TEST_CASE("philox known answers") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) == B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});

  Philox4x32 a(7, 3), b(7, 3), c(7, 4);
  a.discard(5);
  for (int i = 0; i < 5; ++i) b();
  CHECK(a() == b());
  CHECK(Philox4x32(7, 3)() != c());
}

TEST_CASE("parallel_for covers every index and rethrows the first failure") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_WITH(parallel_for(100, 3,
                                 [](std::size_t i) {
                                   if (i == 17 || i == 60) throw DomainError(std::to_string(i));
                                 }),
                    "17");
}

TEST_CASE("hyperplane killing detection") {
  Philox4x32 rng(1, 0);
  auto k = detect_killing_hyperplane(0.3, -0.1, 1e-3, false, rng);
  CHECK(k.killed);
  CHECK(k.fraction == doctest::Approx(0.75));
  k = detect_killing_hyperplane(0.3, 0.3, 1e-4, true, rng);
  CHECK_FALSE(k.killed);
  CHECK(k.fraction == 1.0);

  // Bridge kills with probability exp(-2ab/dt).
  int killed = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) killed += detect_killing_hyperplane(0.01, 0.01, 1e-3, true, rng).killed;
  const double p = std::exp(-2 * 0.01 * 0.01 / 1e-3);
  CHECK(std::abs(static_cast<double>(killed) / n - p) < 5 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("paths started on the killing set die at time zero") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  const auto path = simulate_rbm(Eigen::Vector2d(0.2, 0.0), cfg, {1, 0});
  REQUIRE(path.killed_at);
  CHECK(*path.killed_at == 0.0);
  CHECK_THROWS_AS(simulate_rbm(Eigen::Vector2d(0.9, 0.9), cfg, {1, 0}), DomainError);
}

TEST_CASE("reflected paths stay in the ball and have the Brownian second moment") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_time = 0.01;
  cfg.killing = KillingKind::None;
  const int n = 100000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = simulate_rbm(Eigen::Vector2d::Zero(), cfg, {11, static_cast<std::uint64_t>(i)});
    const double r2 = p.positions.col(p.positions.cols() - 1).squaredNorm();
    sum += r2;
    sum2 += r2 * r2;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 2 * 0.01) < 3 * se);

  // One step from the center is start + sqrt(dt) * N(0, I).
  cfg.dt = 1e-4;
  cfg.max_time = 1e-4;
  const auto one = simulate_rbm(Eigen::Vector2d::Zero(), cfg, {4, 2});
  Philox4x32 rng(4, 2);
  std::normal_distribution<double> normal;
  const double x = normal(rng), y = normal(rng);
  CHECK(one.positions(0, 1) == doctest::Approx(1e-2 * x).epsilon(1e-14));
  CHECK(one.positions(1, 1) == doctest::Approx(1e-2 * y).epsilon(1e-14));

  // Near the sphere the reflection keeps paths inside.
  cfg.dimension = 3;
  cfg.max_time = 0.5;
  const auto p = simulate_rbm(Eigen::Vector3d(0, 0, 0.99), cfg, {3, 0});
  CHECK(p.positions.colwise().norm().maxCoeff() <= 1 + 1e-12);
  CHECK(p.times.size() == 5001);
}

TEST_CASE("paths are reproducible from their stream id") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_time = 0.3;
  cfg.stop_at_kill = false;
  const Eigen::Vector2d start(0.2, 0.3);
  std::vector<PathSample> a(8), b(8);
  parallel_for(8, 1, [&](std::size_t i) { a[i] = simulate_rbm(start, cfg, {9, i}); });
  parallel_for(8, 4, [&](std::size_t i) { b[7 - i] = simulate_rbm(start, cfg, {9, 7 - i}); });
  for (int i = 0; i < 8; ++i) {
    CHECK(a[i].positions == b[i].positions);
    CHECK(a[i].killed_at == b[i].killed_at);
  }
  // Before killing, hyperplane paths stay strictly above the plane.
  for (const auto& p : a) {
    for (Eigen::Index k = 0; k < p.positions.cols() && (!p.killed_at || p.times[k] < *p.killed_at); ++k) {
      CHECK(p.positions(1, k) > 0);
    }
  }
}

TEST_CASE("half-space survival matches erf") {
  // P^0.5{tau_H > 0.1} = erf(0.5 / sqrt(0.2)). Brownian scaling by 0.1 gives the same
  // probability from height 0.05 at t = 0.001, with the sphere 30 standard deviations away.
  SimConfig cfg;
  cfg.dt = 1e-6;
  cfg.max_time = 0.002;
  const double h = 0.05, t = 0.001;
  const auto e = functional_tail_estimate(Eigen::Vector2d(0, h), Potential::constant_value(1), t, 100000, cfg,
                                          {5, 0}, 2);
  CHECK(std::erf(h / std::sqrt(2 * t)) == doctest::Approx(std::erf(0.5 / std::sqrt(0.2))));
  CHECK(e.unresolved == 0);
  CHECK(std::abs(e.value - std::erf(h / std::sqrt(2 * t))) < 4 * e.stderr_);
}

TEST_CASE("estimates do not depend on the thread count") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_time = 2;
  const auto v = quadratic_potential();
  const Eigen::Vector2d start(0.1, 0.4);
  const auto a = functional_tail_estimate(start, v, 0.05, 500, cfg, {42, 0}, 1);
  const auto b = functional_tail_estimate(start, v, 0.05, 500, cfg, {42, 0}, 3);
  CHECK(a.value == b.value);
  const auto c = functional_tail_estimate(start, v, 0.05, 500, cfg, {43, 0}, 3);
  CHECK(a.value != c.value);
}

TEST_CASE("functional tail at t = 0 is one for interior starts") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  const auto e = functional_tail_estimate(Eigen::Vector2d(0, 0.5), Potential::constant_value(2), 0.0, 200, cfg,
                                          {1, 0});
  CHECK(e.value == 1.0);
  CHECK(e.stderr_ == 0.0);

  // Far beyond the mean functional the tail vanishes.
  cfg.max_time = 200;
  const auto far = functional_tail_estimate(Eigen::Vector2d(0, 0.5), Potential::constant_value(2), 50.0, 2000, cfg,
                                            {1, 0});
  CHECK(far.value <= 3 * far.stderr_);
  CHECK(far.unresolved == 0);
}

TEST_CASE("survival estimates decrease in t") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_time = 4;
  const Eigen::Vector2d start(0.1, 0.5);
  std::vector<SurvivalEstimate> e;
  for (double t : {0.05, 0.2, 0.5, 1.0}) {
    e.push_back(functional_tail_estimate(start, Potential::constant_value(1), t, 20000, cfg, {31, 0}));
  }
  for (std::size_t k = 1; k < e.size(); ++k) {
    CHECK(e[k].value <= e[k - 1].value + 3 * std::hypot(e[k].stderr_, e[k - 1].stderr_));
    CHECK(e[k].value - 3 * e[k].stderr_ >= -0.01);
    CHECK(e[k].value + 3 * e[k].stderr_ <= 1.01);
  }
}

TEST_CASE("Feynman-Kac with a constant potential") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.killing = KillingKind::None;
  const auto e = feynman_kac(Eigen::Vector2d(0, 0.5), Potential::constant_value(3), 0.2, 100, cfg, {2, 0});
  CHECK(e.value == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));

  // With killing: exp(-c t) P{tau > t}.
  cfg.killing = KillingKind::Hyperplane;
  cfg.max_time = 2;
  const Eigen::Vector2d start(0, 0.3);
  const auto fk = feynman_kac(start, Potential::constant_value(3), 0.1, 20000, cfg, {9, 0});
  const auto tail = functional_tail_estimate(start, Potential::constant_value(1), 0.1, 20000, cfg, {10, 0});
  const double se = std::hypot(fk.stderr_, std::exp(-0.3) * tail.stderr_);
  CHECK(std::abs(fk.value - std::exp(-0.3) * tail.value) < 5 * se);

  // V = 0 with the same streams counts survivors.
  Potential zero;
  zero.name = "zero";
  zero.value = [](const Eigen::Ref<const Eigen::VectorXd>&) { return 0.0; };
  const auto fk0 = feynman_kac(start, zero, 0.1, 5000, cfg, {12, 0});
  std::size_t alive = 0;
  for (std::uint64_t i = 0; i < 5000; ++i) {
    BallWalker w(cfg, start, {12, i});
    for (int k = 0; k < 100 && !w.killed(); ++k) w.step();
    alive += !w.killed();
  }
  CHECK(fk0.value == doctest::Approx(alive / 5000.0).epsilon(1e-12));
}

TEST_CASE("Feynman-Kac with a conformal potential is positive and decreasing in t") {
  // f(z) = (z + 0.3 z^2) / 1.3 style potential: |f'|^2 with f' = 1 + 0.6 z.
  conformal::AnalyticMap f = [](Complex z, int order) {
    if (order == 0) return z + 0.3 * z * z;
    if (order == 1) return 1.0 + 0.6 * z;
    return Complex(0.6, 0);
  };
  const auto v = conformal::potential_from_map(f, "|f'|^2");
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_time = 2;
  for (Point w : {Point(0, 0.3), Point(0.2, 0.6), Point(-0.4, 0.5)}) {
    double prev = 1.0;
    for (double t : {0.05, 0.2, 0.5}) {
      const auto e = feynman_kac(Eigen::Vector2d(w.real(), w.imag()), v, t, 4000, cfg, {17, 0});
      CHECK(e.value > 0);
      CHECK(e.value < prev);
      prev = e.value;
    }
  }
}

TEST_CASE("coupled path invariants") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  CouplingSpec spec{Eigen::Vector2d(0.3, 0.8), 0.4, 0.9};
  const auto v = quadratic_potential();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto c = run_coupled(spec, v, cfg, {61, i});
    const double floor = spec.r1 / spec.r2;
    for (Eigen::Index k = 0; k < c.M.size(); ++k) {
      CHECK(c.M[k] >= floor);
      CHECK(c.M[k] <= 1 + 1e-12);
      if (k > 0) {
        CHECK(c.M[k] >= c.M[k - 1]);
        CHECK(c.A[k] > c.A[k - 1]);
      }
      CHECK(c.A[k] >= c.base_times[k] - 1e-12);
      CHECK(std::abs(c.alpha_at(c.A[k]) - c.base_times[k]) < cfg.dt);
    }
    CHECK(c.coupled.colwise().norm().maxCoeff() <= 1 + 1e-12);
    CHECK((c.coupled.col(0) - spec.r2 * spec.zeta).norm() < 1e-12);
    for (std::size_t m = 0; m < c.alpha.size(); ++m) CHECK(c.alpha[m] <= c.coupled_times[m] + 1e-12);
  }
}

TEST_CASE("coupling with a constant running maximum") {
  // |B| <= 0.4 and r1/r2 = 0.5, so M = 0.5, A = 4s, alpha = u/4 and B~_u = 2 B_{u/4}.
  SimConfig cfg;
  cfg.dt = 1e-3;
  CouplingSpec spec{Eigen::Vector2d(0, 1), 0.2, 0.4};
  PathSample base;
  const int n = 2501;
  base.positions.resize(2, n);
  for (int k = 0; k < n; ++k) {
    const double s = k * 1e-3;
    base.times.push_back(s);
    base.positions.col(k) = Eigen::Vector2d(0.05 * s, 0.2 - 0.1 * s);
  }
  const auto c = scaling_couple(base, spec, Potential::constant_value(1), cfg);
  CHECK((c.M.array() == 0.5).all());
  CHECK(c.A[n - 1] == doctest::Approx(10.0));
  for (double u : {0.0, 1.0, 3.3, 7.9}) CHECK(c.alpha_at(u) == doctest::Approx(u / 4));
  for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(c.coupled_times.size()); m += 997) {
    const double s = c.coupled_times[m] / 4;
    CHECK((c.coupled.col(m) - 2 * Eigen::Vector2d(0.05 * s, 0.2 - 0.1 * s)).norm() < 1e-12);
  }
  REQUIRE(c.tau);
  REQUIRE(c.tau_tilde);
  CHECK(*c.tau == doctest::Approx(2.0));
  CHECK(*c.tau_tilde == doctest::Approx(8.0));
  CHECK(c.alpha_tau_tilde == doctest::Approx(2.0));
  CHECK(c.functional_base == doctest::Approx(2.0));
  CHECK(c.functional_coupled == doctest::Approx(8.0));
  CHECK_THROWS_AS(c.alpha_at(11.0), NumericalError);
}

TEST_CASE("equal radii give identical functionals") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  CouplingSpec spec{Eigen::Vector2d(0.3, 0.5), 0.8, 0.8};
  const auto v = quadratic_potential();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto c = run_coupled(spec, v, cfg, {77, i});
    REQUIRE_FALSE(c.truncated);
    CHECK(std::abs(*c.tau - *c.tau_tilde) < 1e-12);
    CHECK(std::abs(c.functional_base - c.functional_coupled) < 1e-12);
  }
}

TEST_CASE("coupled functionals are ordered for admissible potentials") {
  SimConfig cfg;
  cfg.dt = 1e-3;
  CouplingSpec spec{Eigen::Vector2d(0.2, 0.6), 0.5, 0.9};
  const auto v = quadratic_potential();
  REQUIRE(v.admissible);
  int holds = 0;
  const int n = 200;
  for (std::uint64_t i = 0; i < n; ++i) holds += coupled_ordering_check(run_coupled(spec, v, cfg, {5, i}), 1e-9).holds;
  CHECK(holds == n);

  Potential bad;
  bad.name = "|x|^-3";
  bad.value = [](const Eigen::Ref<const Eigen::VectorXd>& x) { return std::pow(x.norm(), -3.0); };
  conformal::verify_admissible(bad);
  CHECK_THROWS_AS(coupled_ordering_check(run_coupled(spec, bad, cfg, {5, 0}), 1e-9), DomainError);
}

TEST_CASE("killing times are ordered when the complement is starlike") {
  auto domain = std::make_shared<const geometry::MixedDomain>(
      geometry::half_disk(geometry::DirichletPart::Arc, geometry::HalfPlane::Upper));
  auto flat = std::make_shared<const geometry::MixedDomain>(
      geometry::half_disk(geometry::DirichletPart::Straight, geometry::HalfPlane::Upper));
  const auto star = geometry::is_starlike_complement(*flat);
  REQUIRE(star.certificate);

  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.killing = KillingKind::Curve;
  cfg.domain = flat;
  cfg.max_time = 1;
  CouplingSpec spec{Eigen::Vector2d(0.1, 0.5), 0.6, 0.9};
  int holds = 0;
  const int n = 100;
  for (std::uint64_t i = 0; i < n; ++i) {
    holds += killing_order_check(run_coupled(spec, Potential::constant_value(1), cfg, {8, i}), *star.certificate,
                                 2 * cfg.dt);
  }
  CHECK(holds == n);

  cfg.domain = domain;
  CHECK_THROWS_AS(killing_order_check(run_coupled(spec, Potential::constant_value(1), cfg, {8, 0}),
                                      *star.certificate, 1e-3),
                  DomainError);
}

TEST_CASE("survival through the identity map agrees with direct simulation") {
  const auto d = geometry::half_disk(geometry::DirichletPart::Straight);
  conformal::AnalyticMap identity = [](Complex z, int order) { return order == 0 ? z : Complex(order == 1, 0); };
  SimConfig cfg;
  cfg.dt = 1e-4;
  const double t = 0.1;
  const auto via = survival_via_conformal(d, identity, {0.1, 0.4}, t, 10000, cfg, {21, 0}, 2);
  const auto direct = direct_survival(d, {0.1, 0.4}, t, 10000, 1e-4, true, {22, 0}, 2);
  CHECK(std::abs(via.value - direct.value) < 5 * std::hypot(via.stderr_, direct.stderr_));

  const auto l = geometry::lens(kPi / 2);
  CHECK_THROWS_WITH_AS(survival_via_conformal(l, identity, {0.1, 0.4}, t, 10, cfg, {1, 0}),
                       "map does not send (-1, 1) onto gamma2", DomainError);
  CHECK_THROWS_AS(survival_via_conformal(d, identity, {0.1, -0.4}, t, 10, cfg, {1, 0}), DomainError);
}
