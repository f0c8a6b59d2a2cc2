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

#include "hotspots/geometry/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hotspots::geometry {

namespace {

double wrap_positive(double a) {
  a = std::fmod(a, 2 * kPi);
  return a < 0 ? a + 2 * kPi : a;
}

// Parameter intervals of gamma1 whose image stays within the clip disk.
std::vector<std::pair<double, double>> kept_intervals(const BoundaryCurve& g, Point center, double threshold) {
  constexpr int kScan = 8192;
  auto keep = [&](double t) { return std::abs(g.at(t) - center) >= threshold; };
  auto refine = [&](double lo, double hi) {
    const bool lo_keep = keep(lo);
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (keep(mid) == lo_keep ? lo : hi) = mid;
    }
    return lo_keep ? lo : hi;
  };
  std::vector<std::pair<double, double>> out;
  bool in = keep(0.0);
  double start = 0.0;
  for (int i = 1; i <= kScan; ++i) {
    const double t0 = static_cast<double>(i - 1) / kScan;
    const double t1 = static_cast<double>(i) / kScan;
    const bool k1 = keep(t1);
    if (k1 != in) {
      const double edge = refine(t0, t1);
      if (in) out.emplace_back(start, edge);
      else start = edge;
      in = k1;
    }
  }
  if (in) out.emplace_back(start, 1.0);
  return out;
}

}  // namespace

SymmetrizedDomain symmetrize_domain(const MixedDomain& domain, double clip_radius, int samples) {
  if (domain.arc_role() != ArcRole::Gamma2IsArc) {
    throw DomainError("symmetrization needs gamma2 to be the circular arc");
  }
  const Circle c = domain.arc_circle();
  if (domain.locate(c.center) == Location::Interior) {
    throw DomainError(
        "the center of the circle carrying gamma2 lies inside D (gamma2 subtends more than pi); "
        "the reflected domain is unbounded");
  }
  const BoundaryCurve& g1 = domain.gamma1();
  auto sigma = [&](Point z) { return invert(c.center, c.radius, z); };

  SymmetrizedDomain out{domain, c, g1, {}, {}, false, clip_radius};
  const auto g1_samples = g1.sample(samples);

  const double threshold = c.radius * c.radius / clip_radius;
  const bool touches_center = g1.distance(c.center) <= threshold;

  if (!touches_center) {
    BoundaryCurve mirror = g1.inverted(c);
    const auto m = mirror.sample(samples);
    out.mirror_boundary = mirror;
    out.full_boundary = g1_samples;
    for (std::size_t i = m.size() - 1; i-- > 1;) out.full_boundary.push_back(m[i]);
    out.pieces = {g1, mirror.reversed()};
    return out;
  }

  // Unbounded image: walk the reversed mirror and bridge the gaps along the clip circle.
  out.clipped = true;
  const auto intervals = kept_intervals(g1, c.center, threshold);
  if (intervals.empty()) throw DomainError("gamma1 lies entirely inside the clip threshold");
  std::vector<Point> reversed_mirror;
  auto push = [&](Point p) {
    if (reversed_mirror.empty() || std::abs(reversed_mirror.back() - p) > 1e-12 * clip_radius) {
      reversed_mirror.push_back(p);
    }
  };
  const int orient = domain.orientation();
  for (std::size_t k = intervals.size(); k-- > 0;) {
    const auto [a, b] = intervals[k];
    for (int i = 0; i < samples; ++i) push(sigma(g1.at(b - (b - a) * i / (samples - 1))));
    if (k == 0) break;
    const Point from = sigma(g1.at(a)) - c.center;
    const Point to = sigma(g1.at(intervals[k - 1].second)) - c.center;
    const double sweep = orient > 0 ? wrap_positive(std::arg(to) - std::arg(from))
                                    : -wrap_positive(std::arg(from) - std::arg(to));
    for (int i = 1; i < samples - 1; ++i) {
      push(c.center + std::polar(clip_radius, std::arg(from) + sweep * i / (samples - 1)));
    }
  }
  out.full_boundary = g1_samples;
  for (std::size_t i = 1; i + 1 < reversed_mirror.size(); ++i) out.full_boundary.push_back(reversed_mirror[i]);
  std::vector<Point> mirror(reversed_mirror.rbegin(), reversed_mirror.rend());
  out.mirror_boundary = BoundaryCurve::sampled(std::move(mirror));
  return out;
}

bool contains(const SymmetrizedDomain& s, Point z) {
  const Circle& c = s.inversion_circle;
  if (z == c.center) return false;
  if (s.clipped && std::abs(z - c.center) > s.clip_radius) return false;
  const MixedDomain& d = s.original;
  if (d.inside(z) || d.inside(invert(c.center, c.radius, z))) return true;
  return d.gamma2().distance(z) <= 1e-12 * d.diameter();
}

}  // namespace hotspots::geometry
