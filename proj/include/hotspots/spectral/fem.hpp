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

#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hotspots/spectral/mesh.hpp"

namespace hotspots::spectral {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// P1 element matrices of the counter-clockwise triangle abc. Throws MeshError
/// for degenerate triangles.
Eigen::Matrix3d element_stiffness(Point a, Point b, Point c);
Eigen::Matrix3d element_mass(Point a, Point b, Point c);

/// Stiffness and consistent mass on the free (non-Dirichlet) vertices.
struct FemSystem {
  SparseMatrix K;
  SparseMatrix M;
  std::vector<int> free_vertices;
  /// -1 for Dirichlet vertices.
  std::vector<int> dof_of_vertex;
};

FemSystem assemble(const TriMesh& mesh);

struct EigenPair {
  double mu1 = 0;
  /// Second eigenvalue, used by the expansion precondition.
  double mu2 = 0;
  /// Nodal values on every vertex, zero on Dirichlet vertices, psi^T M psi = 1, max entry positive.
  Eigen::VectorXd psi1;
  /// |K x - mu1 M x| / |x| on the free vertices.
  double residual = 0;
  int iterations = 0;
};

/// Block inverse iteration with shift 0 (sparse LDL^T of K) and Rayleigh-Ritz
/// on a block of four; starts from all ones plus fixed oscillating vectors.
/// Throws IterationError when the residuals of the two lowest pairs stay above tol.
EigenPair smallest_eigenpair(const FemSystem& system, double tol = 1e-9, int max_iterations = 500);

/// Integral of the piecewise-linear nodal field.
double integrate(const TriMesh& mesh, const Eigen::VectorXd& nodal);

}  // namespace hotspots::spectral
