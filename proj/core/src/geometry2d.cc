/******************************************************************************
 * Copyright 2026 The spraycov Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "spraycov/geometry2d.h"

#include <algorithm>
#include <limits>
#include <numbers>
#include <utility>

#include <fmt/format.h>

namespace spraycov {
namespace {

// Keeps the part of a convex ring on the inner side of the line through
// `origin` with unit normal `normal`, shifted inward by `offset`.
std::vector<Point2D> ClipByHalfPlane(const std::vector<Point2D> &ring,
                                     const Point2D &origin,
                                     const Point2D &normal, double offset) {
  std::vector<Point2D> out;
  const std::size_t n = ring.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D &cur = ring[i];
    const Point2D &next = ring[(i + 1) % n];
    const double dc = Dot(normal, cur - origin) - offset;
    const double dn = Dot(normal, next - origin) - offset;
    if (dc >= 0.0) out.push_back(cur);
    if ((dc >= 0.0) != (dn >= 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back(cur + (next - cur) * t);
    }
  }
  return out;
}

// Drops near-coincident and collinear vertices from a convex ring.
std::vector<Point2D> CleanRing(std::vector<Point2D> ring, double tolerance) {
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
      const std::size_t n = ring.size();
      const Point2D &prev = ring[(i + n - 1) % n];
      const Point2D &cur = ring[i];
      const Point2D &next = ring[(i + 1) % n];
      const double base = Distance(prev, next);
      const bool duplicate = Distance(prev, cur) < tolerance;
      const bool collinear =
          base < tolerance || std::abs(Cross(next - prev, cur - prev)) / base <= tolerance;
      if (duplicate || collinear) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (ring.size() < 3) ring.clear();
  return ring;
}

double SignedArea(std::span<const Point2D> ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += Cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * twice;
}

// Intersection of the inward-shifted edge half-planes, cleaned. Empty when
// the offset region has no interior.
std::vector<Point2D> InnerParallelRing(const ConvexPolygon &p, double inset) {
  std::vector<Point2D> ring = p.vertices();
  for (std::size_t i = 0; i < p.size() && !ring.empty(); ++i) {
    ring = ClipByHalfPlane(ring, p.vertex(i), p.InwardNormal(i), inset);
  }
  ring = CleanRing(std::move(ring), p.tolerance());
  if (!ring.empty() && SignedArea(ring) <= p.tolerance() * p.tolerance()) ring.clear();
  return ring;
}

}  // namespace

Point2D Normalized(const Point2D &v) {
  const double n = v.Norm();
  if (!(n > 0.0)) {
    throw GeometryError(GeometryError::Kind::kInvalidArgument,
                        "cannot normalize a zero-length vector");
  }
  return v / n;
}

bool LexLess(const Point2D &a, const Point2D &b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

double DistanceToSegment(const Point2D &q, const Segment2D &s) {
  const Point2D d = s.b - s.a;
  const double len2 = Dot(d, d);
  if (len2 == 0.0) return Distance(q, s.a);
  const double t = std::clamp(Dot(q - s.a, d) / len2, 0.0, 1.0);
  return Distance(q, s.At(t));
}

Point2D ConvexPolygon::InwardNormal(std::size_t i) const {
  return Normalized(LeftNormal(vertex(i + 1) - vertex(i)));
}

ConvexPolygon ValidateConvex(std::span<const Point2D> vertices, double tolerance) {
  using Kind = GeometryError::Kind;
  if (!(tolerance > 0.0)) {
    throw GeometryError(Kind::kInvalidArgument, "tolerance must be positive");
  }
  if (vertices.size() < 3) {
    throw GeometryError(Kind::kTooFewVertices,
                        fmt::format("polygon needs at least 3 vertices, got {}",
                                    vertices.size()));
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].IsFinite()) {
      throw GeometryError(Kind::kNonFinite, fmt::format("vertex {} is not finite", i));
    }
  }

  std::vector<Point2D> ring(vertices.begin(), vertices.end());
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (Distance(ring[i], ring[(i + 1) % n]) < tolerance) {
      throw GeometryError(Kind::kDegenerate,
                          fmt::format("vertices {} and {} coincide", i, (i + 1) % n));
    }
  }
  if (SignedArea(ring) < 0.0) std::reverse(ring.begin(), ring.end());

  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D &prev = ring[(i + n - 1) % n];
    const Point2D &cur = ring[i];
    const Point2D &next = ring[(i + 1) % n];
    const double offset = Cross(next - prev, cur - prev) / Distance(prev, next);
    if (std::abs(offset) <= tolerance) {
      throw GeometryError(Kind::kDegenerate,
                          fmt::format("vertex {} is collinear with its neighbours", i));
    }
    const Point2D in = cur - prev;
    const Point2D out = next - cur;
    if (Cross(in, out) <= 0.0) {
      throw GeometryError(Kind::kNotConvex, fmt::format("reflex turn at vertex {}", i));
    }
    turning += std::atan2(Cross(in, out), Dot(in, out));
  }
  // All-left turns that wind more than once describe a star, not a convex ring.
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw GeometryError(Kind::kNotConvex, "vertex ring is self-intersecting");
  }
  return ConvexPolygon(std::move(ring), tolerance);
}

double Area(const ConvexPolygon &p) { return SignedArea(p.vertices()); }

double Perimeter(const ConvexPolygon &p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += p.edge(i).Length();
  return total;
}

Point2D Centroid(const ConvexPolygon &p) {
  const Point2D anchor = p.vertex(0);
  Point2D acc;
  double twice_area = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2D a = p.vertex(i) - anchor;
    const Point2D b = p.vertex(i + 1) - anchor;
    const double w = Cross(a, b);
    acc = acc + (a + b) * w;
    twice_area += w;
  }
  return anchor + acc / (3.0 * twice_area);
}

ConvexPolygon Erode(const ConvexPolygon &p, double inset) {
  if (!(inset > 0.0) || !std::isfinite(inset)) {
    throw GeometryError(GeometryError::Kind::kInvalidArgument,
                        fmt::format("erosion inset must be positive, got {}", inset));
  }
  std::vector<Point2D> ring = InnerParallelRing(p, inset);
  if (ring.empty()) {
    throw GeometryError(GeometryError::Kind::kEmptyErosion,
                        fmt::format("inset {} leaves no interior (footprint larger than area)",
                                    inset));
  }
  try {
    return ValidateConvex(ring, p.tolerance());
  } catch (const GeometryError &) {
    throw GeometryError(GeometryError::Kind::kEmptyErosion,
                        fmt::format("inset {} collapses the polygon", inset));
  }
}

double Inradius(const ConvexPolygon &p) {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    hi = std::min(hi, 0.5 * WidthInDirection(p, p.InwardNormal(i)));
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    std::vector<Point2D> ring = p.vertices();
    for (std::size_t i = 0; i < p.size() && !ring.empty(); ++i) {
      ring = ClipByHalfPlane(ring, p.vertex(i), p.InwardNormal(i), mid);
    }
    (ring.empty() ? hi : lo) = mid;
  }
  return lo;
}

Extent ProjectionExtent(const ConvexPolygon &p, const Point2D &direction) {
  Extent e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point2D &v : p.vertices()) {
    const double s = Dot(v, direction);
    e.min = std::min(e.min, s);
    e.max = std::max(e.max, s);
  }
  return e;
}

double WidthInDirection(const ConvexPolygon &p, const Point2D &direction) {
  return ProjectionExtent(p, direction).Length();
}

std::vector<AntipodalPair> EdgeAntipodalPairs(const ConvexPolygon &p) {
  const std::size_t n = p.size();
  std::vector<AntipodalPair> pairs;
  pairs.reserve(n);
  auto height = [&p](std::size_t edge, std::size_t v) {
    return Dot(p.InwardNormal(edge), p.vertex(v) - p.vertex(edge));
  };
  // The caliper only ever advances, so the whole pass takes O(n) steps.
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    while (height(i, j + 1) > height(i, j)) ++j;
    const double w = height(i, j);
    const bool parallel = std::abs(height(i, j + 1) - w) <= p.tolerance();
    pairs.push_back({i, j % n, w, parallel});
  }
  return pairs;
}

bool Contains(const ConvexPolygon &p, const Point2D &q, double tolerance) {
  return DistanceToBoundary(p, q) >= -tolerance;
}

double DistanceToBoundary(const ConvexPolygon &p, const Point2D &q) {
  bool inside = true;
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Segment2D e = p.edge(i);
    if (Cross(e.b - e.a, q - e.a) < 0.0) inside = false;
    nearest = std::min(nearest, DistanceToSegment(q, e));
  }
  return inside ? nearest : -nearest;
}

std::optional<Segment2D> ClipSegment(const ConvexPolygon &p, const Segment2D &s) {
  double t_enter = 0.0;
  double t_exit = 1.0;
  const Point2D d = s.b - s.a;
  const double parallel_rate = 1e-12 * d.Norm();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2D normal = p.InwardNormal(i);
    // Constraint: Dot(normal, s(t) - v_i) >= 0. Segments running along an
    // edge line are kept if they sit within tolerance of it.
    const double base = Dot(normal, s.a - p.vertex(i));
    const double rate = Dot(normal, d);
    if (std::abs(rate) <= parallel_rate) {
      if (base < -p.tolerance()) return std::nullopt;
      continue;
    }
    const double t = -base / rate;
    if (rate > 0.0) {
      t_enter = std::max(t_enter, t);
    } else {
      t_exit = std::min(t_exit, t);
    }
    if (t_enter > t_exit) return std::nullopt;
  }
  Segment2D clipped{s.At(t_enter), s.At(t_exit)};
  if (clipped.Length() < p.tolerance()) return std::nullopt;
  return clipped;
}

}  // namespace spraycov
