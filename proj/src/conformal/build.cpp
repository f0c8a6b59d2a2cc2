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

#include "hotspots/conformal/build.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/FFT>

namespace hotspots::conformal {

StarTarget StarTarget::disk(Point center, double radius) {
  if (!(radius > 0)) throw DomainError("disk radius must be positive");
  return {center, [radius](double) { return radius; }, {center, 0.0}, std::nullopt, std::nullopt};
}

StarTarget StarTarget::ellipse(double a, double b, Point center) {
  if (!(a > 0) || !(b > 0)) throw DomainError("ellipse semi-axes must be positive");
  auto rho = [a, b](double phi) {
    const double x = b * std::cos(phi), y = a * std::sin(phi);
    return a * b / std::sqrt(x * x + y * y);
  };
  return {center, rho, {center, 0.0}, std::nullopt, std::nullopt};
}

StarTarget StarTarget::from_symmetrized(const geometry::SymmetrizedDomain& target) {
  if (!target.bounded()) throw DomainError("the symmetrized domain is unbounded; no disk map exists");
  const auto& domain = target.original;
  const Point p = domain.gamma2().at(0.5);
  const Point z0 = target.inversion_circle.center;
  Point tangent = Point{0, 1} * (p - z0) / std::abs(p - z0);
  if (!domain.inside(p + 1e-6 * domain.diameter() * Point{0, 1} * tangent)) tangent = -tangent;

  // Corners of D* have twice the corner angles of D.
  const auto [a0, a1] = geometry::corner_angles(domain);
  const CornerMap corner(domain.gamma1().start(), domain.gamma1().end(), std::min(1.0, (a0 + a1) / kPi), p);

  // P(D*) is starlike about P(p) = 0 and fills the unit disk when gamma1 is a
  // circular arc through the corners; otherwise it may bulge past it.
  auto rho = [target, corner](double phi) {
    const Complex dir = std::polar(1.0, phi);
    double lo = 0, hi = 1;
    while (hi < 4 && geometry::contains(target, corner.inverse(hi * dir))) {
      lo = hi;
      hi *= 1.25;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (geometry::contains(target, corner.inverse(mid * dir)) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return {{0, 0}, rho, {p, std::arg(tangent)}, target.inversion_circle, corner};
}

namespace {

using Spectrum = std::vector<Complex>;

struct Fourier {
  explicit Fourier(int n) : n(n) {}
  int n;
  Eigen::FFT<double> fft;

  Spectrum forward(const std::vector<Complex>& v) {
    Spectrum out;
    fft.fwd(out, v);
    return out;
  }

  // Harmonic conjugate of real periodic samples; the Nyquist mode is dropped.
  std::vector<double> conjugate(const std::vector<double>& v) {
    std::vector<Complex> in(v.begin(), v.end());
    Spectrum s = forward(in);
    for (int k = 0; k < n; ++k) {
      if (k == 0 || 2 * k == n) s[k] = 0;
      else if (2 * k < n) s[k] *= Complex(0, -1);
      else s[k] *= Complex(0, 1);
    }
    std::vector<Complex> back;
    fft.inv(back, s);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = back[k].real();
    return out;
  }
};

// Trigonometric interpolant of real samples on the uniform grid.
class TrigInterpolant {
 public:
  TrigInterpolant(Fourier& f, const std::vector<double>& v) : n_(f.n) {
    std::vector<Complex> in(v.begin(), v.end());
    s_ = f.forward(in);
    for (auto& c : s_) c /= static_cast<double>(n_);
  }

  double operator()(double phi) const {
    double out = s_[0].real() + s_[n_ / 2].real() * std::cos(0.5 * n_ * phi);
    const Complex step = std::polar(1.0, phi);
    Complex e = step;
    for (int k = 1; k < n_ / 2; ++k) {
      out += 2 * (s_[k] * e).real();
      e *= step;
    }
    return out;
  }

 private:
  int n_;
  Spectrum s_;
};

// Fixed point psi = beta + K[log rho(theta + psi)] with adaptive damping.
std::vector<double> theodorsen(Fourier& f, const StarTarget& target, double beta, const BuildOptions& opt,
                               BuildDiagnostics& diag) {
  const int n = f.n;
  std::vector<double> psi(n, 0.0), logr(n);
  double omega = 1, prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iterations; ++it) {
    for (int j = 0; j < n; ++j) logr[j] = std::log(target.radius(2 * kPi * j / n + psi[j]));
    auto next = f.conjugate(logr);
    double res = 0;
    for (int j = 0; j < n; ++j) {
      next[j] += beta;
      res = std::max(res, std::abs(next[j] - psi[j]));
    }
    diag.residual_history.push_back(res);
    diag.iterations = it + 1;
    if (res < opt.iteration_tol) return next;
    if (res > prev) omega = std::max(omega / 2, 1.0 / 64);
    for (int j = 0; j < n; ++j) psi[j] += omega * (next[j] - psi[j]);
    prev = res;
  }
  throw IterationError("Theodorsen iteration did not converge in " + std::to_string(opt.max_iterations) +
                           " iterations at " + std::to_string(n) + " nodes",
                       diag.residual_history);
}

Eigen::VectorXcd coefficients_from_boundary(Fourier& f, const std::vector<Complex>& w) {
  const Spectrum s = f.forward(w);
  Eigen::VectorXcd c(f.n / 2 + 1);
  for (int k = 0; k <= f.n / 2; ++k) {
    c[k] = s[k] / static_cast<double>(f.n);
    if (std::abs(c[k]) < 1e-14) c[k] = 0;
  }
  return c;
}

Point solve_preimage(const PowerSeriesMap& h, Point p) {
  Point a{0, 0};
  for (int it = 0; it < 100; ++it) {
    const Complex r = h.eval(a) - p;
    if (std::abs(r) < 1e-15 * (1 + std::abs(p))) return a;
    Complex step = r / h.eval(a, 1);
    while (std::abs(a - step) >= 0.999) step *= 0.5;
    a -= step;
  }
  if (std::abs(h.eval(a) - p) < 1e-12 * (1 + std::abs(p))) return a;
  throw NumericalError("could not locate the preimage of the normalization point");
}

PowerSeriesMap build_at(const StarTarget& target, int n, const BuildOptions& opt) {
  Fourier f(n);
  BuildDiagnostics diag;
  diag.nodes = n;
  // Normalization of the bare series.
  MapNormalization norm = target.normalization;
  if (target.outer) {
    const Complex u = target.outer->forward(norm.value_at_zero);
    norm = {u, norm.derivative_arg - std::arg(target.outer->inverse(u, 1))};
  }
  const Point c = target.center, p = norm.value_at_zero;
  const bool recenter = std::abs(p - c) > 1e-14 * (1 + std::abs(c));
  const double beta = recenter ? 0.0 : norm.derivative_arg;
  const auto psi = theodorsen(f, target, beta, opt, diag);

  std::vector<Complex> w(n);
  for (int j = 0; j < n; ++j) {
    const double phi = 2 * kPi * j / n + psi[j];
    w[j] = c + std::polar(target.radius(phi), phi);
  }
  Eigen::VectorXcd coeffs = coefficients_from_boundary(f, w);

  if (recenter) {
    // Compose with m(z) = e^{i lambda} (z + a) / (1 + conj(a) z), where a = h^{-1}(p).
    const PowerSeriesMap h(coeffs);
    const Point a = solve_preimage(h, p);
    const double lambda = norm.derivative_arg - std::arg(h.eval(a, 1));
    const TrigInterpolant psi_of(f, psi);
    for (int j = 0; j < n; ++j) {
      const Point e = std::polar(1.0, 2 * kPi * j / n);
      const double t = std::arg(std::polar(1.0, lambda) * (e + a) / (1.0 + std::conj(a) * e));
      const double phi = t + psi_of(t);
      w[j] = c + std::polar(target.radius(phi), phi);
    }
    coeffs = coefficients_from_boundary(f, w);
  }

  double cmax = 0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) cmax = std::max(cmax, std::abs(coeffs[k]));
  diag.tail_ratio = std::abs(coeffs[coeffs.size() - 1]) / cmax;
  PowerSeriesMap map(std::move(coeffs), target.normalization, target.symmetry, target.outer);
  diag.boundary_error =
      boundary_error([&map](Complex z, int order) { return map.series(z, order); }, target, 4 * n);
  map.diagnostics = std::move(diag);
  return map;
}

}  // namespace

double boundary_error(const AnalyticMap& g, const StarTarget& target, int samples) {
  double worst = 0;
  for (int j = 0; j < samples; ++j) {
    const Point w = g(std::polar(1.0, 2 * kPi * j / samples), 0) - target.center;
    worst = std::max(worst, std::abs(std::abs(w) - target.radius(std::arg(w))));
  }
  return worst;
}

PowerSeriesMap build_disk_map(const StarTarget& target, int boundary_nodes, double tol, const BuildOptions& options) {
  if (boundary_nodes < 64 || (boundary_nodes & (boundary_nodes - 1)) != 0) {
    throw DomainError("boundary_nodes must be a power of two >= 64");
  }
  std::vector<double> errors;
  for (int n = boundary_nodes;; n *= 2) {
    PowerSeriesMap map = build_at(target, n, options);
    errors.push_back(map.diagnostics.boundary_error);
    if (map.diagnostics.boundary_error <= tol) return map;
    if (2 * n > options.max_nodes) {
      throw IterationError("boundary error " + std::to_string(map.diagnostics.boundary_error) + " above " +
                               std::to_string(tol) + " at " + std::to_string(n) + " nodes",
                           errors);
    }
  }
}

PowerSeriesMap build_disk_map(const geometry::SymmetrizedDomain& target, int boundary_nodes, double tol,
                              const BuildOptions& options) {
  return build_disk_map(StarTarget::from_symmetrized(target), boundary_nodes, tol, options);
}

}  // namespace hotspots::conformal
