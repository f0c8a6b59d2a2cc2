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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hotspots/geometry/domain.hpp"

namespace hotspots::spectral {

enum class EdgeTag { Neumann, Dirichlet };

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  EdgeTag tag = EdgeTag::Neumann;
};

/// Counter-clockwise triangles; boundary edges tagged Neumann (gamma1) or Dirichlet (gamma2).
struct TriMesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double h = 0;

  /// 1 for vertices on a Dirichlet edge (the corners included).
  std::vector<char> dirichlet_flags() const;
  double area() const;
};

struct MeshOptions {
  /// Target size near the two corners is h / corner_factor.
  double corner_factor = 4;
  /// Triangles with circumradius / shortest edge above this are split (sqrt 2 ~ 20.7 degrees).
  double max_radius_edge_ratio = 1.4142135623730951;
  std::size_t max_vertices = 4'000'000;
};

/// Constrained Delaunay refinement of D. Boundary vertices lie on the exact curves.
/// Throws MeshError on failure and DomainError for h outside (0, diameter / 4).
TriMesh mesh_domain(const geometry::MixedDomain& domain, double h, const MeshOptions& options = {});

struct MeshAudit {
  bool conforming = false;
  bool all_boundary_tagged = false;
  bool positive_areas = false;
  double min_angle_deg = 0;
  /// V - E + F with the outer face excluded.
  long euler = 0;
  /// Largest distance of a boundary vertex to the curve its edges are tagged with.
  double boundary_band = 0;
};

/// Interior edges shared by exactly two triangles, boundary edges by one.
MeshAudit audit_mesh(const TriMesh& mesh, const geometry::MixedDomain* domain = nullptr);

/// Plain text: vertex count, "x y" lines, triangle count, "i j k" lines, then
/// "i j NEUMANN|DIRICHLET" lines. A leading "# h <value>" line carries the mesh size.
void write_mesh(const TriMesh& mesh, std::ostream& out);
/// Throws MeshError on malformed input.
TriMesh read_mesh(std::istream& in);

}  // namespace hotspots::spectral
