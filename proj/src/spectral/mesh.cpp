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

#include "hotspots/spectral/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace hotspots::spectral {

using geometry::BoundaryCurve;
using geometry::MixedDomain;

std::vector<char> TriMesh::dirichlet_flags() const {
  std::vector<char> out(vertices.size(), 0);
  for (const auto& e : boundary_edges) {
    if (e.tag == EdgeTag::Dirichlet) out[e.a] = out[e.b] = 1;
  }
  return out;
}

double TriMesh::area() const {
  double a = 0;
  for (const auto& t : triangles) a += 0.5 * cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]);
  return a;
}

namespace {

double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

// Positive when d lies inside the circumcircle of the counter-clockwise triangle abc.
double incircle(Point a, Point b, Point c, Point d) {
  const Point ad = a - d, bd = b - d, cd = c - d;
  return std::norm(ad) * cross(bd, cd) - std::norm(bd) * cross(ad, cd) + std::norm(cd) * cross(ad, bd);
}

Point circumcenter(Point a, Point b, Point c) {
  const Point ba = b - a, ca = c - a;
  const double d = 2 * cross(ba, ca);
  const double b2 = std::norm(ba), c2 = std::norm(ca);
  return a + Point(ca.imag() * b2 - ba.imag() * c2, ba.real() * c2 - ca.real() * b2) / d;
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

struct Tri {
  std::array<int, 3> v;
  // n[i] is the neighbour across the edge opposite v[i]; -1 on the hull.
  std::array<int, 3> n;
  bool alive = true;
  bool inside = false;
};

struct Segment {
  int a, b;
  int curve;
  double ta, tb;
  bool alive = true;
};

class Triangulator {
 public:
  Triangulator(const MixedDomain& d, double h, const MeshOptions& o)
      : d_(d), h_(h), opt_(o), curves_{&d.gamma1(), &d.gamma2()} {}

  TriMesh run() {
    init_super();
    init_boundary();
    drain_segments();
    flood_inside();
    refine();
    return extract();
  }

 private:
  double size_at(Point z) const {
    const double dc = std::min(std::abs(z - d_.corner0()), std::abs(z - d_.corner1()));
    return std::min(h_, h_ / opt_.corner_factor + 0.5 * dc);
  }

  bool constrained(int a, int b) const { return constraints_.count(edge_key(a, b)) > 0; }

  int add_vertex(Point p) {
    if (pts_.size() >= opt_.max_vertices) throw MeshError("mesh exceeds the vertex budget");
    pts_.push_back(p);
    vt_.push_back(-1);
    return static_cast<int>(pts_.size()) - 1;
  }

  void init_super() {
    const auto [lo, hi] = d_.bounding_box();
    const Point c = 0.5 * (lo + hi);
    const double r = 100 * std::max(d_.diameter(), std::abs(hi - lo));
    for (int k = 0; k < 3; ++k) add_vertex(c + std::polar(r, kPi / 2 + 2 * kPi * k / 3));
    tris_.push_back({{0, 1, 2}, {-1, -1, -1}});
    vt_[0] = vt_[1] = vt_[2] = 0;
  }

  // Walks towards p. Returns the containing triangle, or -1 when a
  // constrained edge blocks the way (then *blocked is its key).
  int locate(Point p, int start, bool stop_at_constraints, std::uint64_t* blocked = nullptr) {
    int t = start;
    const std::size_t cap = 4 * tris_.size() + 64;
    for (std::size_t step = 0; step < cap; ++step) {
      const Tri& tr = tris_[t];
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>((k + step) % 3);
        const int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
        if (orient(pts_[a], pts_[b], p) < -1e-13 * std::norm(pts_[b] - pts_[a])) {
          if (stop_at_constraints && constrained(a, b)) {
            if (blocked) *blocked = edge_key(a, b);
            return -1;
          }
          if (tr.n[i] < 0) throw MeshError("point outside the triangulation");
          t = tr.n[i];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    for (std::size_t k = 0; k < tris_.size(); ++k) {
      const Tri& tr = tris_[k];
      if (!tr.alive) continue;
      bool in = true;
      for (int i = 0; i < 3 && in; ++i) {
        const Point a = pts_[tr.v[i]], b = pts_[tr.v[(i + 1) % 3]];
        in = orient(a, b, p) >= -1e-13 * std::norm(b - a);
      }
      if (in) return static_cast<int>(k);
    }
    throw MeshError("point location failed at " + std::to_string(p.real()) + "," + std::to_string(p.imag()));
  }

  // Bowyer-Watson insertion; the cavity never crosses a constrained edge.
  int insert(Point p, int seed) {
    const int pi = add_vertex(p);
    ++epoch_;
    if (mark_.size() < tris_.size()) mark_.resize(tris_.size() + tris_.size() / 2 + 16, 0);
    std::vector<int> cavity{seed};
    mark_[seed] = epoch_;
    for (std::size_t k = 0; k < cavity.size(); ++k) {
      const Tri& tr = tris_[cavity[k]];
      for (int i = 0; i < 3; ++i) {
        const int nb = tr.n[i];
        if (nb < 0 || mark_[nb] == epoch_ || constrained(tr.v[(i + 1) % 3], tr.v[(i + 2) % 3])) continue;
        const Tri& o = tris_[nb];
        if (incircle(pts_[o.v[0]], pts_[o.v[1]], pts_[o.v[2]], p) > 0) {
          mark_[nb] = epoch_;
          cavity.push_back(nb);
        }
      }
    }

    struct Rim {
      int e0, e1, outer;
    };
    std::vector<Rim> rim;
    for (bool again = true; again;) {
      again = false;
      rim.clear();
      for (std::size_t k = 0; k < cavity.size() && !again; ++k) {
        const Tri& tr = tris_[cavity[k]];
        for (int i = 0; i < 3; ++i) {
          const int nb = tr.n[i];
          if (nb >= 0 && mark_[nb] == epoch_) continue;
          const int e0 = tr.v[(i + 1) % 3], e1 = tr.v[(i + 2) % 3];
          const double scale = std::norm(pts_[e1] - pts_[e0]);
          if (orient(pts_[e0], pts_[e1], p) <= 1e-12 * scale) {
            if (nb < 0 || constrained(e0, e1)) throw MeshError("degenerate insertion next to a constrained edge");
            mark_[nb] = epoch_;
            cavity.push_back(nb);
            again = true;
            break;
          }
          rim.push_back({e0, e1, nb});
        }
      }
    }

    for (int t : cavity) tris_[t].alive = false;
    const int first = static_cast<int>(tris_.size());
    for (const Rim& r : rim) {
      Tri t{{r.e0, r.e1, pi}, {-1, -1, r.outer}};
      if (r.outer >= 0) {
        Tri& o = tris_[r.outer];
        for (int i = 0; i < 3; ++i) {
          if (o.n[i] >= 0 && mark_[o.n[i]] == epoch_ && o.v[(i + 1) % 3] == r.e1 && o.v[(i + 2) % 3] == r.e0) {
            o.n[i] = static_cast<int>(tris_.size());
          }
        }
        t.inside = constrained(r.e0, r.e1) ? !o.inside : o.inside;
      }
      tris_.push_back(t);
    }
    const int last = static_cast<int>(tris_.size());
    for (int a = first; a < last; ++a) {
      for (int b = first; b < last; ++b) {
        if (tris_[b].v[0] == tris_[a].v[1]) tris_[a].n[0] = b;
        if (tris_[b].v[1] == tris_[a].v[0]) tris_[a].n[1] = b;
      }
      vt_[tris_[a].v[0]] = vt_[tris_[a].v[1]] = a;
      queue_.push_back(a);
    }
    vt_[pi] = first;
#ifdef HOTSPOTS_MESH_DEBUG
    validate(pi);
#endif
    return pi;
  }

#ifdef HOTSPOTS_MESH_DEBUG
  void validate(int pi) const {
    double area = 0;
    for (const Tri& t : tris_) {
      if (t.alive) area += orient(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]]);
    }
    const double full = orient(pts_[0], pts_[1], pts_[2]);
    if (std::abs(area - full) > 1e-9 * full) {
      std::fprintf(stderr, "after %d (%g,%g): area %g of %g\n", pi, pts_[pi].real(), pts_[pi].imag(), area, full);
      std::abort();
    }
    for (std::size_t v = 0; v < pts_.size(); ++v) {
      if (vt_[v] < 0 || !tris_[vt_[v]].alive) {
        std::fprintf(stderr, "after %d: vertex %zu lost\n", pi, v);
        std::abort();
      }
    }
    for (std::size_t k = 0; k < tris_.size(); ++k) {
      const Tri& t = tris_[k];
      if (!t.alive) continue;
      if (!(orient(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]]) > 0)) {
        std::fprintf(stderr, "after %d: tri %zu not ccw\n", pi, k);
        std::abort();
      }
      for (int i = 0; i < 3; ++i) {
        const int nb = t.n[i];
        if (nb < 0) continue;
        const Tri& o = tris_[nb];
        int back = 0;
        for (int j = 0; j < 3; ++j) back += o.n[j] == static_cast<int>(k);
        if (!o.alive || back != 1) {
          std::fprintf(stderr, "after %d (%g,%g): tri %zu bad neighbour %d alive %d\n", pi, pts_[pi].real(),
                       pts_[pi].imag(), k, nb, o.alive);
          std::abort();
        }
      }
    }
  }
#endif

  // Triangle holding the directed edge a -> b and the local index of the
  // opposite vertex, or -1.
  int find_edge(int a, int b, int* opposite) const {
    const int start = vt_[a];
    int t = start;
    do {
      const Tri& tr = tris_[t];
      int i = 0;
      while (tr.v[i] != a) ++i;
      if (tr.v[(i + 1) % 3] == b) {
        *opposite = (i + 2) % 3;
        return t;
      }
      if (tr.v[(i + 2) % 3] == b) {
        *opposite = (i + 1) % 3;
        return t;
      }
      t = tr.n[(i + 2) % 3];
    } while (t >= 0 && t != start);
    return -1;
  }

  bool encroaches(const Segment& s, Point p) const {
    return dot(pts_[s.a] - p, pts_[s.b] - p) < -1e-14 * std::norm(pts_[s.a] - pts_[s.b]);
  }

  double seg_length(const Segment& s) const { return std::abs(pts_[s.a] - pts_[s.b]); }

  void add_segment(int a, int b, int curve, double ta, double tb) {
    segs_.push_back({a, b, curve, ta, tb});
    work_.push_back(static_cast<int>(segs_.size()) - 1);
  }

  void init_boundary() {
    const int c0 = insert(d_.corner0(), locate(d_.corner0(), 0, false));
    const int c1 = insert(d_.corner1(), locate(d_.corner1(), vt_[c0], false));
    for (int c = 0; c < 2; ++c) {
      const BoundaryCurve& g = *curves_[c];
      std::vector<double> breaks{0.0, 1.0};
      if (g.kind() == BoundaryCurve::Kind::Sampled) {
        breaks.clear();
        const auto m = g.points().size();
        for (std::size_t i = 0; i < m; ++i) breaks.push_back(static_cast<double>(i) / (m - 1));
      }
      int prev = c0;
      double tprev = 0;
      for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double t0 = breaks[k], t1 = breaks[k + 1];
        const double len = g.kind() == BoundaryCurve::Kind::Sampled ? std::abs(g.at(t1) - g.at(t0))
                                                                    : g.length() * (t1 - t0);
        const int m = std::max(1, static_cast<int>(std::ceil(len / h_)));
        for (int j = 1; j <= m; ++j) {
          const double t = j == m ? t1 : t0 + (t1 - t0) * j / m;
          const int v = t == 1.0 ? c1 : insert(g.at(t), locate(g.at(t), vt_[prev], false));
          add_segment(prev, v, c, tprev, t);
          prev = v;
          tprev = t;
        }
      }
    }
  }

  void split(int si) {
    Segment s = segs_[si];
    segs_[si].alive = false;
    constraints_.erase(edge_key(s.a, s.b));
    const double tm = 0.5 * (s.ta + s.tb);
    const Point p = curves_[s.curve]->at(tm);
    const int m = insert(p, locate(p, vt_[s.a], false));
    add_segment(s.a, m, s.curve, s.ta, tm);
    add_segment(m, s.b, s.curve, tm, s.tb);
    for (std::size_t k = 0; k + 2 < segs_.size(); ++k) {
      if (segs_[k].alive && encroaches(segs_[k], p)) work_.push_back(static_cast<int>(k));
    }
  }

  bool splittable(const Segment& s) const { return seg_length(s) > 1e-3 * h_ / opt_.corner_factor; }

  void drain_segments() {
    while (!work_.empty()) {
      const int si = work_.front();
      work_.pop_front();
      const Segment& s = segs_[si];
      if (!s.alive) continue;
      int opp = 0;
      const int t = find_edge(s.a, s.b, &opp);
      bool split_it = t < 0;
      if (t >= 0) {
        constraints_[edge_key(s.a, s.b)] = si;
        const Point mid = 0.5 * (pts_[s.a] + pts_[s.b]);
        if (seg_length(s) > size_at(mid)) split_it = true;
        const int nb = tris_[t].n[opp];
        for (int v : {tris_[t].v[opp], nb >= 0 ? apex_across(nb, s.a, s.b) : -1}) {
          if (v >= 3 && encroaches(s, pts_[v])) split_it = true;
        }
        if (split_it && !splittable(s)) split_it = false;
      } else if (!splittable(s)) {
        throw MeshError("cannot recover a boundary segment");
      }
      if (split_it) split(si);
    }
  }

  int apex_across(int t, int a, int b) const {
    for (int v : tris_[t].v) {
      if (v != a && v != b) return v;
    }
    return -1;
  }

  void flood_inside() {
    for (Tri& t : tris_) t.inside = t.alive;
    std::vector<int> stack;
    for (std::size_t k = 0; k < tris_.size(); ++k) {
      const Tri& t = tris_[k];
      if (t.alive && (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3)) {
        tris_[k].inside = false;
        stack.push_back(static_cast<int>(k));
      }
    }
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      const Tri t = tris_[k];
      for (int i = 0; i < 3; ++i) {
        const int nb = t.n[i];
        if (nb < 0 || !tris_[nb].inside || constrained(t.v[(i + 1) % 3], t.v[(i + 2) % 3])) continue;
        tris_[nb].inside = false;
        stack.push_back(nb);
      }
    }
    bool any = false;
    for (const Tri& t : tris_) any = any || (t.alive && t.inside);
    if (!any) throw MeshError("boundary is not closed");
  }

  void refine() {
    queue_.clear();
    for (std::size_t k = 0; k < tris_.size(); ++k) {
      if (tris_[k].alive && tris_[k].inside) queue_.push_back(static_cast<int>(k));
    }
    const double shape_floor = h_ / (8 * opt_.corner_factor);
    while (!queue_.empty()) {
      const int t = queue_.front();
      queue_.pop_front();
      if (!tris_[t].alive || !tris_[t].inside) continue;
      const Point a = pts_[tris_[t].v[0]], b = pts_[tris_[t].v[1]], c = pts_[tris_[t].v[2]];
      const double la = std::abs(b - c), lb = std::abs(c - a), lc = std::abs(a - b);
      const double area2 = orient(a, b, c);
      const double radius = la * lb * lc / (2 * area2);
      const double lmin = std::min({la, lb, lc});
      const bool big = radius > size_at((a + b + c) / 3.0) / std::sqrt(3.0);
      const bool skinny = radius / lmin > opt_.max_radius_edge_ratio && lmin > shape_floor;
      if (!big && !skinny) continue;
      const Point cc = circumcenter(a, b, c);

      std::vector<int> hit;
      for (std::size_t k = 0; k < segs_.size(); ++k) {
        if (segs_[k].alive && encroaches(segs_[k], cc) && splittable(segs_[k])) hit.push_back(static_cast<int>(k));
      }
      if (hit.empty()) {
        std::uint64_t blocked = 0;
        const int loc = locate(cc, t, true, &blocked);
        if (loc >= 0) {
          insert(cc, loc);
          continue;
        }
        const int si = constraints_.at(blocked);
        if (splittable(segs_[si])) hit.push_back(si);
      }
      if (hit.empty()) continue;
      for (int si : hit) {
        if (segs_[si].alive) split(si);
      }
      drain_segments();
      queue_.push_back(t);
    }
  }

  TriMesh extract() const {
    TriMesh out;
    out.h = h_;
    std::vector<int> index(pts_.size(), -1);
    for (const Tri& t : tris_) {
      if (!t.alive || !t.inside) continue;
      for (int v : t.v) index[v] = 0;
    }
    for (std::size_t v = 0; v < pts_.size(); ++v) {
      if (index[v] == 0) {
        index[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pts_[v]);
      }
    }
    for (const Tri& t : tris_) {
      if (t.alive && t.inside) out.triangles.push_back({index[t.v[0]], index[t.v[1]], index[t.v[2]]});
    }
    for (const Segment& s : segs_) {
      if (!s.alive) continue;
      if (index[s.a] < 0 || index[s.b] < 0) throw MeshError("boundary segment outside the mesh");
      out.boundary_edges.push_back({index[s.a], index[s.b], s.curve == 0 ? EdgeTag::Neumann : EdgeTag::Dirichlet});
    }
    return out;
  }

  const MixedDomain& d_;
  double h_;
  MeshOptions opt_;
  std::array<const BoundaryCurve*, 2> curves_;
  std::vector<Point> pts_;
  std::vector<int> vt_;
  std::vector<Tri> tris_;
  std::vector<Segment> segs_;
  std::unordered_map<std::uint64_t, int> constraints_;
  std::deque<int> work_;
  std::deque<int> queue_;
  std::vector<int> mark_;
  int epoch_ = 0;
};

}  // namespace

TriMesh mesh_domain(const MixedDomain& domain, double h, const MeshOptions& options) {
  if (!(h > 0) || !(h < domain.diameter() / 4)) throw DomainError("mesh size must lie in (0, diameter / 4)");
  if (!(options.corner_factor >= 1) || !(options.max_radius_edge_ratio >= std::sqrt(2.0) - 1e-12)) {
    throw DomainError("invalid mesh options");
  }
  return Triangulator(domain, h, options).run();
}

MeshAudit audit_mesh(const TriMesh& mesh, const MixedDomain* domain) {
  MeshAudit a;
  std::unordered_map<std::uint64_t, int> count;
  a.positive_areas = true;
  a.min_angle_deg = 180;
  for (const auto& t : mesh.triangles) {
    const Point p[3] = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
    if (!(orient(p[0], p[1], p[2]) > 0)) a.positive_areas = false;
    for (int i = 0; i < 3; ++i) {
      ++count[edge_key(t[i], t[(i + 1) % 3])];
      const Point u = p[(i + 1) % 3] - p[i], v = p[(i + 2) % 3] - p[i];
      a.min_angle_deg = std::min(a.min_angle_deg, std::abs(std::atan2(cross(u, v), dot(u, v))) * 180 / kPi);
    }
  }
  std::unordered_map<std::uint64_t, int> tagged;
  for (const auto& e : mesh.boundary_edges) ++tagged[edge_key(e.a, e.b)];
  a.conforming = true;
  a.all_boundary_tagged = true;
  for (const auto& [key, c] : count) {
    if (c > 2) a.conforming = false;
    if (c == 1 && tagged[key] != 1) a.all_boundary_tagged = false;
    if (c == 2 && tagged.count(key) && tagged[key] != 0) a.all_boundary_tagged = false;
  }
  for (const auto& [key, c] : tagged) {
    if (c != 1 || !count.count(key) || count[key] != 1) a.all_boundary_tagged = false;
  }
  a.euler = static_cast<long>(mesh.vertices.size()) - static_cast<long>(count.size()) +
            static_cast<long>(mesh.triangles.size());
  if (domain) {
    for (const auto& e : mesh.boundary_edges) {
      const BoundaryCurve& g = e.tag == EdgeTag::Neumann ? domain->gamma1() : domain->gamma2();
      a.boundary_band = std::max({a.boundary_band, g.distance(mesh.vertices[e.a]), g.distance(mesh.vertices[e.b])});
    }
  }
  return a;
}

void write_mesh(const TriMesh& mesh, std::ostream& out) {
  out << std::setprecision(17);
  out << "# h " << mesh.h << '\n' << mesh.vertices.size() << '\n';
  for (Point p : mesh.vertices) out << p.real() << ' ' << p.imag() << '\n';
  out << mesh.triangles.size() << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges) {
    out << e.a << ' ' << e.b << ' ' << (e.tag == EdgeTag::Neumann ? "NEUMANN" : "DIRICHLET") << '\n';
  }
}

TriMesh read_mesh(std::istream& in) {
  TriMesh m;
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      if (hs >> key && key == "h") hs >> m.h;
      continue;
    }
    lines.push_back(line);
  }
  std::size_t at = 0;
  auto next = [&]() -> std::istringstream {
    if (at >= lines.size()) throw MeshError("mesh file ends early");
    return std::istringstream(lines[at++]);
  };
  auto count_line = [&]() {
    auto s = next();
    long n = -1;
    if (!(s >> n) || n < 0) throw MeshError("bad count line in mesh file");
    return static_cast<std::size_t>(n);
  };
  const std::size_t nv = count_line();
  for (std::size_t i = 0; i < nv; ++i) {
    auto s = next();
    double x, y;
    if (!(s >> x >> y)) throw MeshError("bad vertex line in mesh file");
    m.vertices.emplace_back(x, y);
  }
  const std::size_t nt = count_line();
  auto check = [&](long i) {
    if (i < 0 || static_cast<std::size_t>(i) >= nv) throw MeshError("vertex index out of range in mesh file");
    return static_cast<int>(i);
  };
  for (std::size_t i = 0; i < nt; ++i) {
    auto s = next();
    long a, b, c;
    if (!(s >> a >> b >> c)) throw MeshError("bad triangle line in mesh file");
    m.triangles.push_back({check(a), check(b), check(c)});
  }
  while (at < lines.size()) {
    auto s = next();
    long a, b;
    std::string tag;
    if (!(s >> a >> b >> tag) || (tag != "NEUMANN" && tag != "DIRICHLET")) {
      throw MeshError("bad boundary edge line in mesh file");
    }
    m.boundary_edges.push_back({check(a), check(b), tag == "NEUMANN" ? EdgeTag::Neumann : EdgeTag::Dirichlet});
  }
  return m;
}

}  // namespace hotspots::spectral
