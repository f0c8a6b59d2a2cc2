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

#include "hotspots/stochastic/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace hotspots::stochastic {

void CouplingSpec::validate() const {
  if (zeta.size() < 2) throw DomainError("zeta needs at least two coordinates");
  if (!(zeta[zeta.size() - 1] > 0)) throw DomainError("zeta must point into the upper half-ball");
  if (!(r1 > 0) || !(r1 <= r2) || !(r2 * zeta.norm() < 1)) {
    throw DomainError("radii must satisfy 0 < r1 <= r2 < 1/|zeta|");
  }
}

double CoupledSample::alpha_at(double u) const {
  const Eigen::Index n = A.size();
  if (!(u >= 0) || u > A[n - 1]) throw NumericalError("clock inversion out of range");
  const auto it = std::upper_bound(A.data(), A.data() + n, u);
  const Eigen::Index k = std::max<Eigen::Index>(0, std::min<Eigen::Index>(n - 2, (it - A.data()) - 1));
  const double lam = (u - A[k]) / (A[k + 1] - A[k]);
  return base_times[k] + lam * (base_times[k + 1] - base_times[k]);
}

namespace {

// Signed distance to the killing set; positive before killing.
double killing_distance(const Eigen::Ref<const Eigen::VectorXd>& x, const SimConfig& config) {
  if (config.killing == KillingKind::Hyperplane) return x[x.size() - 1];
  return signed_distance_to_gamma2(*config.domain, {x[0], x[1]});
}

}  // namespace

std::optional<double> first_killing_time(const std::vector<double>& times, const Eigen::MatrixXd& positions,
                                         const SimConfig& config) {
  if (config.killing == KillingKind::None) return std::nullopt;
  double prev = killing_distance(positions.col(0), config);
  if (prev <= 0) return times[0];
  for (Eigen::Index k = 1; k < positions.cols(); ++k) {
    const double cur = killing_distance(positions.col(k), config);
    if (cur <= 0) return times[k - 1] + prev / (prev - cur) * (times[k] - times[k - 1]);
    prev = cur;
  }
  return std::nullopt;
}

double path_functional(const std::vector<double>& times, const Eigen::MatrixXd& positions,
                       const conformal::Potential& v, double until) {
  double total = 0;
  double v_prev = v(positions.col(0));
  for (Eigen::Index k = 1; k < positions.cols(); ++k) {
    const double t0 = times[k - 1], t1 = times[k];
    if (until <= t0) break;
    if (until < t1) {
      const double lam = (until - t0) / (t1 - t0);
      const Eigen::VectorXd end = (1 - lam) * positions.col(k - 1) + lam * positions.col(k);
      total += 0.5 * (until - t0) * (v_prev + v(end));
      break;
    }
    const double v_cur = v(positions.col(k));
    total += 0.5 * (t1 - t0) * (v_prev + v_cur);
    v_prev = v_cur;
  }
  return total;
}

CoupledSample scaling_couple(const PathSample& base, const CouplingSpec& spec, const conformal::Potential& v,
                             const SimConfig& config) {
  spec.validate();
  const Eigen::Index n = base.positions.cols();
  if (n < 2) throw DomainError("base path needs at least two points");
  const Eigen::VectorXd start = spec.r1 * spec.zeta;
  if ((base.positions.col(0) - start).norm() > 1e-12) throw DomainError("base path must start at r1*zeta");

  CoupledSample out;
  out.potential_admissible = v.admissible;
  out.killing_domain = config.killing == KillingKind::Curve ? config.domain.get() : nullptr;
  out.base_times = base.times;
  out.M.resize(n);
  out.A.resize(n);
  const double floor = spec.r1 / spec.r2;
  double running = floor;
  for (Eigen::Index k = 0; k < n; ++k) {
    running = std::max(running, base.positions.col(k).norm());
    out.M[k] = running;
    out.A[k] = k == 0 ? 0.0
                      : out.A[k - 1] + 0.5 * (base.times[k] - base.times[k - 1]) *
                                           (1 / (out.M[k - 1] * out.M[k - 1]) + 1 / (out.M[k] * out.M[k]));
    if (k > 0 && !(out.A[k] > out.A[k - 1])) throw NumericalError("clock A is not strictly increasing");
  }

  // B~ on the uniform grid of its own time, walking alpha forward.
  const double du = config.dt;
  const auto m_count = static_cast<Eigen::Index>(std::floor(out.A[n - 1] / du + 1e-12)) + 1;
  out.coupled.resize(base.positions.rows(), m_count);
  out.coupled_times.resize(m_count);
  out.alpha.resize(m_count);
  Eigen::Index k = 0;
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const double u = std::min(m * du, out.A[n - 1]);
    while (k + 2 < n && out.A[k + 1] <= u) ++k;
    const double lam = std::clamp((u - out.A[k]) / (out.A[k + 1] - out.A[k]), 0.0, 1.0);
    const Eigen::VectorXd b = (1 - lam) * base.positions.col(k) + lam * base.positions.col(k + 1);
    const double mk = std::max(out.M[k], b.norm());
    out.coupled.col(m) = b / mk;
    out.coupled_times[m] = m * du;
    out.alpha[m] = base.times[k] + lam * (base.times[k + 1] - base.times[k]);
  }

  // Killing and the functional of B~ use the images of the base vertices, so
  // a one-step excursion of B is never skipped by the uniform grid.
  out.vertex_times.assign(out.A.data(), out.A.data() + n);
  out.vertex_image = base.positions.array().rowwise() / out.M.transpose().array();
  out.tau = first_killing_time(base.times, base.positions, config);
  out.tau_tilde = first_killing_time(out.vertex_times, out.vertex_image, config);
  out.truncated = !out.tau || !out.tau_tilde;
  if (out.tau_tilde) out.alpha_tau_tilde = out.alpha_at(*out.tau_tilde);
  out.functional_base = path_functional(base.times, base.positions, v, out.tau.value_or(base.times.back()));
  out.functional_coupled =
      path_functional(out.vertex_times, out.vertex_image, v, out.tau_tilde.value_or(out.vertex_times.back()));
  return out;
}

CoupledSample run_coupled(const CouplingSpec& spec, const conformal::Potential& v, SimConfig config, RngId id,
                          double max_time_cap) {
  spec.validate();
  const Eigen::VectorXd start = spec.r1 * spec.zeta;
  config.bridge_correction = false;
  if (config.killing == KillingKind::Hyperplane) {
    // B~ has the sign of B, so it dies at base time tau; a short margin suffices.
    config.stop_at_kill = true;
    config.run_after_kill = 50 * config.dt;
    config.max_time = max_time_cap;
    return scaling_couple(simulate_rbm(start, config, id), spec, v, config);
  }
  config.stop_at_kill = false;
  for (;;) {
    CoupledSample s = scaling_couple(simulate_rbm(start, config, id), spec, v, config);
    if (!s.truncated || config.max_time >= max_time_cap) return s;
    config.max_time = std::min(2 * config.max_time, max_time_cap);
  }
}

OrderingCheck coupled_ordering_check(const CoupledSample& sample, double tol) {
  if (!sample.potential_admissible) throw DomainError("ordering check needs an admissible potential");
  const double slack = sample.functional_coupled - sample.functional_base;
  return {!sample.truncated && slack >= -tol, slack};
}

bool killing_order_check(const CoupledSample& sample, const geometry::StarlikeCertificate& certificate, double tol) {
  if (sample.killing_domain != &certificate.domain()) {
    throw DomainError("the sample was not killed on the certified domain");
  }
  if (sample.truncated) return false;
  return *sample.tau <= sample.alpha_tau_tilde + tol && sample.alpha_tau_tilde <= *sample.tau_tilde + tol;
}

}  // namespace hotspots::stochastic
