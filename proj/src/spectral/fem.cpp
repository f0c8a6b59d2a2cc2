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

#include "hotspots/spectral/fem.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

namespace hotspots::spectral {

namespace {

double signed_area(Point a, Point b, Point c) { return 0.5 * cross(b - a, c - a); }

}  // namespace

Eigen::Matrix3d element_stiffness(Point a, Point b, Point c) {
  const double area = signed_area(a, b, c);
  if (!(area > 1e-300)) throw MeshError("degenerate or clockwise triangle");
  // Gradients of the barycentric coordinates are rot90(opposite edge) / (2 area).
  const Point e[3] = {c - b, a - c, b - a};
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) k(i, j) = dot(e[i], e[j]) / (4 * area);
  }
  return k;
}

Eigen::Matrix3d element_mass(Point a, Point b, Point c) {
  const double area = signed_area(a, b, c);
  if (!(area > 1e-300)) throw MeshError("degenerate or clockwise triangle");
  Eigen::Matrix3d m = Eigen::Matrix3d::Constant(area / 12);
  m.diagonal().setConstant(area / 6);
  return m;
}

FemSystem assemble(const TriMesh& mesh) {
  FemSystem s;
  const auto dirichlet = mesh.dirichlet_flags();
  s.dof_of_vertex.assign(mesh.vertices.size(), -1);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (dirichlet[v]) continue;
    s.dof_of_vertex[v] = static_cast<int>(s.free_vertices.size());
    s.free_vertices.push_back(static_cast<int>(v));
  }
  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(9 * mesh.triangles.size());
  mt.reserve(9 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const Point a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
    const Eigen::Matrix3d k = element_stiffness(a, b, c), m = element_mass(a, b, c);
    for (int i = 0; i < 3; ++i) {
      const int r = s.dof_of_vertex[t[i]];
      if (r < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int col = s.dof_of_vertex[t[j]];
        if (col < 0) continue;
        kt.emplace_back(r, col, k(i, j));
        mt.emplace_back(r, col, m(i, j));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(s.free_vertices.size());
  s.K.resize(n, n);
  s.M.resize(n, n);
  s.K.setFromTriplets(kt.begin(), kt.end());
  s.M.setFromTriplets(mt.begin(), mt.end());
  return s;
}

EigenPair smallest_eigenpair(const FemSystem& system, double tol, int max_iterations) {
  const Eigen::Index n = system.K.rows();
  constexpr int kBlock = 4;
  if (n < kBlock + 1) throw MeshError("too few free vertices for the eigensolver");
  Eigen::SimplicialLDLT<SparseMatrix> solver(system.K);
  if (solver.info() != Eigen::Success || (solver.vectorD().array() <= 0).any()) {
    throw NumericalError("stiffness matrix is singular; the problem needs a Dirichlet part");
  }

  Eigen::MatrixXd x(n, kBlock);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = 1;
    for (int j = 1; j < kBlock; ++j) x(i, j) = std::sin(0.37 * j * static_cast<double>(i + 1));
  }
  std::vector<double> history;
  Eigen::VectorXd mu(kBlock);
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::MatrixXd y = solver.solve(system.M * x);
    const Eigen::MatrixXd ky = system.K * y, my = system.M * y;
    Eigen::MatrixXd kr = y.transpose() * ky, mr = y.transpose() * my;
    kr = 0.5 * (kr + kr.transpose()).eval();
    mr = 0.5 * (mr + mr.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(kr, mr);
    if (ritz.info() != Eigen::Success) throw NumericalError("Rayleigh-Ritz step failed");
    x = y * ritz.eigenvectors();
    mu = ritz.eigenvalues();
    double worst = 0, first = 0;
    for (int j = 0; j < 2; ++j) {
      const Eigen::VectorXd r = system.K * x.col(j) - mu[j] * (system.M * x.col(j));
      const double res = r.norm() / x.col(j).norm();
      worst = std::max(worst, res);
      if (j == 0) first = res;
    }
    history.push_back(worst);
    if (worst < tol) {
      EigenPair p;
      p.mu1 = mu[0];
      p.mu2 = mu[1];
      p.residual = first;
      p.iterations = it;
      Eigen::VectorXd v = x.col(0) / std::sqrt(x.col(0).dot(system.M * x.col(0)));
      if (v.maxCoeff() < -v.minCoeff()) v = -v;
      p.psi1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(system.dof_of_vertex.size()));
      for (std::size_t k = 0; k < system.free_vertices.size(); ++k) p.psi1[system.free_vertices[k]] = v[k];
      return p;
    }
  }
  throw IterationError("inverse iteration did not reach the residual tolerance", history);
}

double integrate(const TriMesh& mesh, const Eigen::VectorXd& nodal) {
  double total = 0;
  for (const auto& t : mesh.triangles) {
    const double area = signed_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
    total += area / 3 * (nodal[t[0]] + nodal[t[1]] + nodal[t[2]]);
  }
  return total;
}

}  // namespace hotspots::spectral
