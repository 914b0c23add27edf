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

// Planar geometry for strictly convex polygons: validation, area, inner
// parallel offsetting, support/width queries, containment, boundary distance
// and segment clipping.

#ifndef SPRAYCOV_GEOMETRY2D_H_
#define SPRAYCOV_GEOMETRY2D_H_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spraycov {

/// Absolute tolerance (meters) used by every geometric predicate unless a
/// caller passes its own.
inline constexpr double kGeometryTolerance = 1e-9;

/// A point or free vector in a local metric frame. When the frame is NED,
/// x is East and y is North.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2D operator+(const Point2D &o) const { return {x + o.x, y + o.y}; }
  constexpr Point2D operator-(const Point2D &o) const { return {x - o.x, y - o.y}; }
  constexpr Point2D operator-() const { return {-x, -y}; }
  constexpr Point2D operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2D operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Point2D &) const = default;

  double Norm() const { return std::hypot(x, y); }
  bool IsFinite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double Dot(const Point2D &a, const Point2D &b) { return a.x * b.x + a.y * b.y; }
constexpr double Cross(const Point2D &a, const Point2D &b) { return a.x * b.y - a.y * b.x; }
inline double Distance(const Point2D &a, const Point2D &b) { return (a - b).Norm(); }
/// Counterclockwise quarter turn.
constexpr Point2D LeftNormal(const Point2D &v) { return {-v.y, v.x}; }
Point2D Normalized(const Point2D &v);
/// Lexicographic (x, then y) ordering used for deterministic tie-breaks.
bool LexLess(const Point2D &a, const Point2D &b);

struct Segment2D {
  Point2D a;
  Point2D b;

  double Length() const { return Distance(a, b); }
  Point2D At(double t) const { return a + (b - a) * t; }
};

/// Distance from `q` to the closed segment `s`.
double DistanceToSegment(const Point2D &q, const Segment2D &s);

class GeometryError : public std::runtime_error {
 public:
  enum class Kind {
    kTooFewVertices,
    kNotConvex,
    kDegenerate,
    kNonFinite,
    kEmptyErosion,
    kInvalidArgument,
  };

  GeometryError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Strictly convex polygon with counterclockwise vertex order. Instances can
/// only be obtained through ValidateConvex (or Erode), so every live object
/// satisfies the invariants: >= 3 vertices, every turn strictly left, no two
/// consecutive vertices closer than the tolerance, positive area.
class ConvexPolygon {
 public:
  const std::vector<Point2D> &vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// Vertex access with cyclic indexing.
  const Point2D &vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  /// Edge i runs from vertex(i) to vertex(i + 1).
  Segment2D edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }
  /// Unit inward normal of edge i.
  Point2D InwardNormal(std::size_t i) const;
  double tolerance() const { return tolerance_; }

 private:
  friend ConvexPolygon ValidateConvex(std::span<const Point2D>, double);
  ConvexPolygon(std::vector<Point2D> vertices, double tolerance)
      : vertices_(std::move(vertices)), tolerance_(tolerance) {}

  std::vector<Point2D> vertices_;
  double tolerance_;
};

/// Validates and canonicalizes a vertex ring. Clockwise input is reversed.
/// Throws GeometryError with kTooFewVertices, kDegenerate (duplicate or
/// collinear points), kNotConvex or kNonFinite.
ConvexPolygon ValidateConvex(std::span<const Point2D> vertices,
                             double tolerance = kGeometryTolerance);

double Area(const ConvexPolygon &p);
double Perimeter(const ConvexPolygon &p);
Point2D Centroid(const ConvexPolygon &p);

/// Inner parallel polygon: the intersection of all edge half-planes, each
/// translated inward by `inset`. Every point of the result is at distance
/// >= inset from the boundary of `p`. Throws kEmptyErosion when the inset
/// reaches the inradius and kInvalidArgument for a non-positive inset.
ConvexPolygon Erode(const ConvexPolygon &p, double inset);

/// Radius of the largest inscribed disk, i.e. the supremum of insets for
/// which Erode succeeds. Accurate to ~1e-12 relative.
double Inradius(const ConvexPolygon &p);

struct Extent {
  double min = 0.0;
  double max = 0.0;
  double Length() const { return max - min; }
};

/// Range of Dot(v, direction) over all vertices.
Extent ProjectionExtent(const ConvexPolygon &p, const Point2D &direction);

/// Support width of `p` along the unit vector `direction`.
double WidthInDirection(const ConvexPolygon &p, const Point2D &direction);

/// For one edge, the vertex farthest from its supporting line.
struct AntipodalPair {
  std::size_t edge = 0;
  std::size_t vertex = 0;
  /// Distance between the edge line and the parallel support line through
  /// `vertex`, i.e. the width of the polygon normal to the edge.
  double width = 0.0;
  /// True when edge (vertex, vertex + 1) is parallel to `edge`, so the
  /// opposite support is a whole edge rather than a single vertex.
  bool parallel_edge = false;
};

/// Edge/vertex antipodal pairs for every edge, found with a single rotating
/// calipers pass (O(n)).
std::vector<AntipodalPair> EdgeAntipodalPairs(const ConvexPolygon &p);

/// True iff q is inside p or within `tolerance` of its boundary.
bool Contains(const ConvexPolygon &p, const Point2D &q,
              double tolerance = kGeometryTolerance);

/// Signed distance to the boundary: positive inside, negative outside.
double DistanceToBoundary(const ConvexPolygon &p, const Point2D &q);

/// Portion of `s` inside `p` (Cyrus-Beck). Results shorter than the
/// polygon tolerance, including vertex tangencies, are reported as empty.
std::optional<Segment2D> ClipSegment(const ConvexPolygon &p, const Segment2D &s);

}  // namespace spraycov

#endif  // SPRAYCOV_GEOMETRY2D_H_
