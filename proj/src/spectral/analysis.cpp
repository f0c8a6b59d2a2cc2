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

#include "hotspots/spectral/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hotspots/geometry/curve.hpp"

namespace hotspots::spectral {

namespace {

// Barycentric coordinates of z in triangle abc.
Eigen::Vector3d barycentric(Point a, Point b, Point c, Point z) {
  const double area = cross(b - a, c - a);
  const double l1 = cross(c - b, z - b) / area, l2 = cross(a - c, z - c) / area;
  return {l1, l2, 1 - l1 - l2};
}

Point closest_on_triangle(Point a, Point b, Point c, Point z) {
  const Eigen::Vector3d l = barycentric(a, b, c, z);
  if ((l.array() >= 0).all()) return z;
  Point best = a;
  double dbest = std::numeric_limits<double>::infinity();
  for (auto [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
    double s = 0;
    const double d = geometry::distance_to_segment(z, p, q, &s);
    if (d < dbest) {
      dbest = d;
      best = p + s * (q - p);
    }
  }
  return best;
}

}  // namespace

MeshField::MeshField(const TriMesh& mesh, Eigen::VectorXd values) : mesh_(&mesh), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(mesh.vertices.size())) {
    throw DomainError("field size does not match the mesh");
  }
  if (mesh.triangles.empty()) throw DomainError("empty mesh");
  Point lo = mesh.vertices[0], hi = lo;
  for (Point p : mesh.vertices) {
    lo = {std::min(lo.real(), p.real()), std::min(lo.imag(), p.imag())};
    hi = {std::max(hi.real(), p.real()), std::max(hi.imag(), p.imag())};
  }
  const double w = std::max(hi.real() - lo.real(), 1e-12), ht = std::max(hi.imag() - lo.imag(), 1e-12);
  cell_ = std::sqrt(w * ht / static_cast<double>(mesh.triangles.size())) * 2;
  lo_ = lo;
  nx_ = static_cast<int>(w / cell_) + 1;
  ny_ = static_cast<int>(ht / cell_) + 1;
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  double hmax = mesh.h;
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    const auto& t = mesh.triangles[k];
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (int i = 0; i < 3; ++i) {
      const Point p = mesh.vertices[t[i]];
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
      if (mesh.h <= 0) hmax = std::max(hmax, std::abs(p - mesh.vertices[t[(i + 1) % 3]]));
    }
    const int i0 = std::clamp(static_cast<int>((x0 - lo.real()) / cell_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((x1 - lo.real()) / cell_), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>((y0 - lo.imag()) / cell_), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((y1 - lo.imag()) / cell_), 0, ny_ - 1);
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(static_cast<int>(k));
    }
  }
  band_ = std::max(1e-12, hmax * hmax);
}

double MeshField::operator()(Point z) const {
  const auto& m = *mesh_;
  const int ci = static_cast<int>(std::floor((z.real() - lo_.real()) / cell_));
  const int cj = static_cast<int>(std::floor((z.imag() - lo_.imag()) / cell_));
  int best = -1;
  double dbest = std::numeric_limits<double>::infinity();
  Point pbest;
  for (int ring = 0; ring <= 1 && best < 0; ++ring) {
    for (int i = ci - ring; i <= ci + ring; ++i) {
      for (int j = cj - ring; j <= cj + ring; ++j) {
        if (i < 0 || j < 0 || i >= nx_ || j >= ny_) continue;
        for (int k : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
          const auto& t = m.triangles[k];
          const Point a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
          const Eigen::Vector3d l = barycentric(a, b, c, z);
          if ((l.array() >= -1e-12).all()) {
            return l[0] * values_[t[0]] + l[1] * values_[t[1]] + l[2] * values_[t[2]];
          }
          const Point q = closest_on_triangle(a, b, c, z);
          if (std::abs(q - z) < dbest) {
            dbest = std::abs(q - z);
            best = k;
            pbest = q;
          }
        }
      }
    }
  }
  if (best < 0 || dbest > band_) throw DomainError("sample outside mesh");
  const auto& t = m.triangles[best];
  const Eigen::Vector3d l = barycentric(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]], pbest);
  return l[0] * values_[t[0]] + l[1] * values_[t[1]] + l[2] * values_[t[2]];
}

double distance_to_neumann(const TriMesh& mesh, Point z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag == EdgeTag::Neumann) d = std::min(d, geometry::distance_to_segment(z, mesh.vertices[e.a], mesh.vertices[e.b]));
  }
  return d;
}

Hotspot hotspot_locate(const EigenPair& pair, const TriMesh& mesh) {
  const Eigen::VectorXd& psi = pair.psi1;
  if (psi.size() != static_cast<Eigen::Index>(mesh.vertices.size())) throw DomainError("eigenvector does not match the mesh");
  Hotspot out;
  psi.maxCoeff(&out.vertex);
  const Point p0 = mesh.vertices[out.vertex];
  out.argmax = p0;
  out.value = psi[out.vertex];

  std::vector<int> star;
  std::set<int> ring;
  for (const auto& t : mesh.triangles) {
    if (t[0] != out.vertex && t[1] != out.vertex && t[2] != out.vertex) continue;
    star.push_back(static_cast<int>(&t - mesh.triangles.data()));
    for (int v : t) ring.insert(v);
  }
  if (ring.size() < 6) {
    const std::set<int> first = ring;
    for (const auto& t : mesh.triangles) {
      if (first.count(t[0]) || first.count(t[1]) || first.count(t[2])) ring.insert(t.begin(), t.end());
    }
  }
  if (ring.size() >= 6) {
    double scale = 0;
    for (int v : ring) scale = std::max(scale, std::abs(mesh.vertices[v] - p0));
    Eigen::MatrixXd a(static_cast<Eigen::Index>(ring.size()), 6);
    Eigen::VectorXd b(a.rows());
    Eigen::Index r = 0;
    for (int v : ring) {
      const Point d = (mesh.vertices[v] - p0) / scale;
      a.row(r) << 1, d.real(), d.imag(), d.real() * d.real(), d.real() * d.imag(), d.imag() * d.imag();
      b[r++] = psi[v];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    Eigen::Matrix2d hess;
    hess << 2 * c[3], c[4], c[4], 2 * c[5];
    const Eigen::Vector2d grad(c[1], c[2]);
    if (hess(0, 0) < 0 && hess.determinant() > 0) {
      const Eigen::Vector2d s = hess.ldlt().solve(-grad);
      const Point cand = p0 + scale * Point(s[0], s[1]);
      for (int k : star) {
        const auto& t = mesh.triangles[k];
        const Eigen::Vector3d l = barycentric(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], cand);
        if ((l.array() >= 0).all()) {
          out.argmax = cand;
          out.value = c[0] + grad.dot(s) + 0.5 * s.dot(hess * s);
          break;
        }
      }
    }
  }
  out.dist_to_gamma1 = distance_to_neumann(mesh, out.argmax);
  return out;
}

RayCurve hyperbolic_ray(const conformal::AnalyticMap& f, double theta, int n) {
  if (!(theta > 0) || !(theta < kPi)) throw DomainError("theta must lie in (0, pi)");
  if (n < 2) throw DomainError("need at least two samples");
  RayCurve c;
  c.kind = RayKind::HyperbolicGammaTheta;
  c.theta = theta;
  for (int k = 0; k < n; ++k) c.samples.push_back(f(std::polar(static_cast<double>(k) / (n - 1), theta), 0));
  return c;
}

RayCurve euclidean_ray(const geometry::MixedDomain& domain, double theta, int n) {
  if (n < 2) throw DomainError("need at least two samples");
  const Point dir = std::polar(1.0, theta);
  constexpr int kScan = 2000;
  const double reach = 1.5 * (domain.diameter() + std::abs(domain.corner0()));
  int first = -1, last = -1;
  for (int k = 0; k <= kScan; ++k) {
    if (domain.inside(reach * k / kScan * dir)) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first < 0) throw DomainError("ray misses the domain");
  auto edge = [&](double in, double out) {
    for (int it = 0; it < 80; ++it) {
      const double m = 0.5 * (in + out);
      (domain.inside(m * dir) ? in : out) = m;
    }
    return 0.5 * (in + out);
  };
  const double step = reach / kScan;
  const double r0 = first == 0 ? 0.0 : edge(first * step, (first - 1) * step);
  const double r1 = edge(last * step, (last + 1) * step);
  RayCurve c;
  c.kind = RayKind::EuclideanRTheta;
  c.theta = theta;
  for (int k = 0; k < n; ++k) c.samples.push_back((r0 + (r1 - r0) * k / (n - 1)) * dir);
  const double d0 = domain.gamma1().distance(c.samples.front()), d1 = domain.gamma1().distance(c.samples.back());
  if (d0 < d1) std::reverse(c.samples.begin(), c.samples.end());
  if (std::min(d0, d1) > 1e-9 * domain.diameter()) throw DomainError("ray does not end on gamma1");
  return c;
}

Monotonicity monotonicity_along_curve(const MeshField& field, const RayCurve& curve, double rel_tol) {
  if (curve.samples.size() < 2) throw DomainError("curve needs at least two samples");
  const double range = field.values().maxCoeff() - field.values().minCoeff();
  // Interpolation roundoff is not a decrease.
  const double floor = 64 * std::numeric_limits<double>::epsilon() * field.values().cwiseAbs().maxCoeff();
  const double tol = std::max(rel_tol * range, floor);
  Monotonicity m;
  m.min_increment = std::numeric_limits<double>::infinity();
  double prev = field(curve.samples[0]);
  for (std::size_t k = 1; k < curve.samples.size(); ++k) {
    const double cur = field(curve.samples[k]);
    const double inc = std::abs(cur - prev) <= floor ? 0.0 : cur - prev;
    m.min_increment = std::min(m.min_increment, inc);
    if (cur < prev - tol) ++m.violations;
    prev = cur;
  }
  return m;
}

Crosscheck expansion_crosscheck(const TriMesh& mesh, const EigenPair& pair,
                                const std::vector<stochastic::SurvivalEstimate>& estimates, double t,
                                const std::vector<double>& model_error) {
  if (!(t > 0)) throw DomainError("t must be positive");
  if (estimates.empty()) throw DomainError("no Monte Carlo estimates");
  if (!model_error.empty() && model_error.size() != estimates.size()) throw DomainError("model_error size mismatch");
  Crosscheck out;
  out.gap_factor = std::exp(-(pair.mu2 - pair.mu1) * t);
  if (!(out.gap_factor < 0.05)) throw DomainError("spectral gap too small at given t");
  const MeshField psi(mesh, pair.psi1);
  const double mass = integrate(mesh, pair.psi1);
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    const auto& e = estimates[k];
    if (e.potential != "one") throw DomainError("the expansion covers unweighted survival only");
    if (std::abs(e.t - 2 * t) > 1e-12 * t) throw DomainError("estimate time must be 2t");
    if (e.start.size() != 2) throw DomainError("estimates must be planar");
    const double pred = std::exp(-pair.mu1 * t) * psi({e.start[0], e.start[1]}) * mass;
    const double err = model_error.empty() ? 0.0 : model_error[k];
    const double scale = std::hypot(e.stderr_, err);
    const double dev = std::abs(e.value - pred) / (scale > 0 ? scale : 1e-300);
    out.predicted.push_back(pred);
    out.deviations.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

nlohmann::json eigen_report(const EigenPair& pair, const Hotspot& spot, double h) {
  return {{"mu1", pair.mu1},
          {"residual", pair.residual},
          {"argmax", {spot.argmax.real(), spot.argmax.imag()}},
          {"dist_to_gamma1", spot.dist_to_gamma1},
          {"h", h}};
}

}  // namespace hotspots::spectral
