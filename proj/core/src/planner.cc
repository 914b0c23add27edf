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

#include "spraycov/planner.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include <fmt/format.h>

namespace spraycov {
namespace {

constexpr std::array<std::pair<WaypointRole, std::string_view>, 5> kRoleNames = {{
    {WaypointRole::kTakeoffTransit, "takeoff-transit"},
    {WaypointRole::kSweep, "sweep"},
    {WaypointRole::kBoundaryConnection, "boundary-connection"},
    {WaypointRole::kCornerTour, "corner-tour"},
    {WaypointRole::kLandingTransit, "landing-transit"},
}};

// Lengths closer than this are treated as ties.
constexpr double kLengthTieTolerance = 1e-9;

// Flight line clipped to the polygon; `lo` has the smaller projection on the
// sweep direction.
struct Chord {
  Point2D lo;
  Point2D hi;
};

// Extreme flight line lying on a polygon edge.
struct SweptEdge {
  std::size_t edge;
  std::size_t chord;
};

struct LineFamily {
  Point2D direction;
  std::vector<Chord> chords;
  std::vector<SweptEdge> swept_edges;
};

struct Route {
  std::vector<Waypoint> waypoints;
  double length = std::numeric_limits<double>::infinity();
};

void RequirePositive(double value, const char *what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw PlanError(PlanError::Kind::kInvalidArgument,
                    fmt::format("{} must be positive and finite, got {}", what, value));
  }
}

Chord OrientedChord(const Point2D &a, const Point2D &b, const Point2D &direction) {
  return Dot(a, direction) <= Dot(b, direction) ? Chord{a, b} : Chord{b, a};
}

// Chord where the line {p : Dot(normal, p) = level} touches the polygon
// from outside; a single vertex or a whole edge.
Chord SupportChord(const ConvexPolygon &p, const Point2D &direction, const Point2D &normal,
                   double level, std::optional<std::size_t> &edge) {
  std::vector<std::size_t> touching;
  std::size_t closest = 0;
  double closest_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double gap = std::abs(Dot(normal, p.vertex(i)) - level);
    if (gap <= p.tolerance()) touching.push_back(i);
    if (gap < closest_gap) {
      closest_gap = gap;
      closest = i;
    }
  }
  if (touching.size() == 2) {
    const std::size_t a = touching[0];
    const std::size_t b = touching[1];
    if (b == a + 1) edge = a;
    if (a == 0 && b == p.size() - 1) edge = b;
    return OrientedChord(p.vertex(a), p.vertex(b), direction);
  }
  return {p.vertex(closest), p.vertex(closest)};
}

LineFamily BuildFamily(const ConvexPolygon &p, const Point2D &direction, double spacing,
                       const AntipodalPair *calipers) {
  LineFamily family;
  family.direction = direction;
  const Point2D normal = LeftNormal(direction);
  const Extent along = ProjectionExtent(p, direction);

  double low;
  double width;
  if (calipers != nullptr) {
    low = Dot(normal, p.vertex(calipers->edge));
    width = calipers->width;
  } else {
    const Extent across = ProjectionExtent(p, normal);
    low = across.min;
    width = across.Length();
  }

  const std::vector<double> offsets = LineOffsets(width, spacing);
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const double level = low + offsets[k];
    const bool first = k == 0;
    const bool last = k + 1 == offsets.size() && offsets.size() > 1;
    if (first && calipers != nullptr) {
      family.swept_edges.push_back({calipers->edge, family.chords.size()});
      family.chords.push_back(OrientedChord(p.vertex(calipers->edge),
                                            p.vertex(calipers->edge + 1), direction));
      continue;
    }
    if (last && calipers != nullptr) {
      const Point2D &v = p.vertex(calipers->vertex);
      if (calipers->parallel_edge) {
        family.swept_edges.push_back({calipers->vertex, family.chords.size()});
        family.chords.push_back(OrientedChord(v, p.vertex(calipers->vertex + 1), direction));
      } else {
        family.chords.push_back({v, v});
      }
      continue;
    }
    if (first || last) {
      std::optional<std::size_t> edge;
      family.chords.push_back(SupportChord(p, direction, normal, level, edge));
      if (edge) family.swept_edges.push_back({*edge, family.chords.size() - 1});
      continue;
    }
    const Segment2D line{normal * level + direction * (along.min - 1.0),
                         normal * level + direction * (along.max + 1.0)};
    if (const auto clipped = ClipSegment(p, line)) {
      family.chords.push_back({clipped->a, clipped->b});
    } else {
      // Within tolerance of a support vertex; take that vertex.
      std::optional<std::size_t> ignored;
      const double target = offsets[k] < 0.5 * width ? low : low + width;
      family.chords.push_back(SupportChord(p, direction, normal, target, ignored));
    }
  }
  return family;
}

std::size_t NearestVertex(const ConvexPolygon &p, const Point2D &from) {
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = Distance(p.vertex(i), from);
    if (d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  return best;
}

std::vector<Waypoint> TourFrom(const ConvexPolygon &p, std::size_t start, bool ccw, bool closed) {
  const std::size_t n = p.size();
  std::vector<Waypoint> tour;
  tour.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = ccw ? (start + k) % n : (start + n - k) % n;
    tour.push_back({p.vertex(idx), WaypointRole::kCornerTour});
  }
  if (closed) tour.push_back({p.vertex(start), WaypointRole::kCornerTour});
  return tour;
}

// Corner tour after the sweep. An open tour omits one boundary edge; that is
// only allowed when the omitted edge is a flown line, so the tour may start
// at either end of any swept edge and run the long way round to the other.
// Without a swept edge the tour closes on itself from the nearest vertex.
std::vector<Waypoint> ChooseTour(const ConvexPolygon &p, const Point2D &from, const Point2D &end,
                                 const std::vector<SweptEdge> &swept_edges) {
  const std::size_t n = p.size();
  auto cost = [&](const std::vector<Waypoint> &tour) {
    return PathLength(tour) + Distance(from, tour.front().position) +
           Distance(tour.back().position, end);
  };
  std::vector<Waypoint> best;
  double best_cost = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<Waypoint> tour) {
    const double c = cost(tour);
    if (c < best_cost - kLengthTieTolerance) {
      best = std::move(tour);
      best_cost = c;
    }
  };
  // Edge (a, a + 1) is omitted by the CCW tour from a + 1 and the CW tour from a.
  for (const auto &[edge, chord] : swept_edges) {
    consider(TourFrom(p, (edge + 1) % n, /*ccw=*/true, /*closed=*/false));
    consider(TourFrom(p, edge, /*ccw=*/false, /*closed=*/false));
  }
  if (best.empty()) {
    const std::size_t start = NearestVertex(p, from);
    consider(TourFrom(p, start, /*ccw=*/true, /*closed=*/true));
    consider(TourFrom(p, start, /*ccw=*/false, /*closed=*/true));
  }
  return best;
}

// Boustrophedon over the family's chords in the given order and initial
// sense, then the corner tour and the landing transit.
Route EvaluateRoute(const ConvexPolygon &p, const LineFamily &family, bool descending,
                    bool first_forward, const Point2D &start, const Point2D &end) {
  Route route;
  auto &wps = route.waypoints;
  wps.reserve(2 * family.chords.size() + p.size() + 3);
  wps.push_back({start, WaypointRole::kTakeoffTransit});
  bool forward = first_forward;
  const std::size_t m = family.chords.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Chord &c = family.chords[descending ? m - 1 - k : k];
    const Point2D &entry = forward ? c.lo : c.hi;
    const Point2D &exit = forward ? c.hi : c.lo;
    wps.push_back(
        {entry, k == 0 ? WaypointRole::kTakeoffTransit : WaypointRole::kBoundaryConnection});
    wps.push_back({exit, WaypointRole::kSweep});
    forward = !forward;
  }
  const std::vector<Waypoint> tour = ChooseTour(p, wps.back().position, end, family.swept_edges);
  wps.insert(wps.end(), tour.begin(), tour.end());
  wps.push_back({end, WaypointRole::kLandingTransit});
  route.length = PathLength(wps);
  return route;
}

// True when `candidate` should replace `incumbent` (shorter, or tied with a
// lexicographically smaller first sweep waypoint).
bool Better(const Route &candidate, const Route &incumbent) {
  if (candidate.length < incumbent.length - kLengthTieTolerance) return true;
  if (candidate.length > incumbent.length + kLengthTieTolerance) return false;
  if (incumbent.waypoints.size() < 2) return true;
  return LexLess(candidate.waypoints[1].position, incumbent.waypoints[1].position);
}

// The tour flies every edge it does not omit, so an edge-aligned extreme
// line may instead be collapsed to one of its ends and left to the tour.
std::vector<LineFamily> CollapseVariants(const LineFamily &family) {
  std::vector<LineFamily> variants{family};
  for (std::size_t k = 0; k < family.swept_edges.size(); ++k) {
    const std::size_t grown = variants.size();
    for (std::size_t v = 0; v < grown; ++v) {
      for (const bool keep_lo : {true, false}) {
        LineFamily collapsed = variants[v];
        auto it = std::find_if(collapsed.swept_edges.begin(), collapsed.swept_edges.end(),
                               [&](const SweptEdge &s) {
                                 return s.edge == family.swept_edges[k].edge;
                               });
        Chord &c = collapsed.chords[it->chord];
        c = keep_lo ? Chord{c.lo, c.lo} : Chord{c.hi, c.hi};
        collapsed.swept_edges.erase(it);
        variants.push_back(std::move(collapsed));
      }
    }
  }
  return variants;
}

Route BestRoute(const ConvexPolygon &p, const LineFamily &family, const Point2D &start,
                const Point2D &end) {
  Route best;
  for (const LineFamily &variant : CollapseVariants(family)) {
    for (const bool descending : {false, true}) {
      for (const bool forward : {true, false}) {
        Route r = EvaluateRoute(p, variant, descending, forward, start, end);
        if (Better(r, best)) best = std::move(r);
      }
    }
  }
  return best;
}

CoveragePath ToPath(Route route, const LineFamily &family, double spacing) {
  CoveragePath path;
  path.waypoints = std::move(route.waypoints);
  path.total_length = PathLength(path.waypoints);
  path.sweep_direction = family.direction;
  path.line_count = family.chords.size();
  path.line_spacing = spacing;
  return path;
}

// Baseline line offsets: half a spacing in from each support line.
std::vector<double> BaselineOffsets(double width, double spacing) {
  const double half = 0.5 * spacing;
  if (width <= spacing) return {0.5 * width};
  std::vector<double> offsets;
  for (double o = half; o <= width - half + kGeometryTolerance; o += spacing) {
    offsets.push_back(o);
  }
  if (offsets.back() < width - half - kGeometryTolerance) offsets.push_back(width - half);
  return offsets;
}

Route BaselineRoute(const std::vector<Chord> &chords, const Point2D &direction, bool descending,
                    bool first_forward, const Point2D &start, const Point2D &end) {
  Route route;
  auto &wps = route.waypoints;
  wps.push_back({start, WaypointRole::kTakeoffTransit});
  const std::size_t m = chords.size();
  bool forward = first_forward;
  for (std::size_t k = 0; k < m; ++k) {
    const Chord &c = chords[descending ? m - 1 - k : k];
    const Point2D &entry = forward ? c.lo : c.hi;
    const Point2D &exit = forward ? c.hi : c.lo;
    if (k == 0) {
      wps.push_back({entry, WaypointRole::kTakeoffTransit});
    } else {
      // Perpendicular turn: run out to the farther of the two line ends,
      // cross over at right angles, come back to the next line's end.
      const Point2D &prev_exit = wps.back().position;
      const double a = Dot(prev_exit, direction);
      const double b = Dot(entry, direction);
      const double turn = forward ? std::min(a, b) : std::max(a, b);
      const Point2D out = prev_exit + direction * (turn - a);
      const Point2D in = entry + direction * (turn - b);
      if (Distance(out, prev_exit) > kGeometryTolerance) {
        wps.push_back({out, WaypointRole::kBoundaryConnection});
      }
      if (Distance(in, entry) > kGeometryTolerance) {
        wps.push_back({in, WaypointRole::kBoundaryConnection});
      }
      wps.push_back({entry, WaypointRole::kBoundaryConnection});
    }
    wps.push_back({exit, WaypointRole::kSweep});
    forward = !forward;
  }
  wps.push_back({end, WaypointRole::kLandingTransit});
  route.length = PathLength(wps);
  return route;
}

}  // namespace

std::string_view RoleName(WaypointRole role) {
  for (const auto &[r, name] : kRoleNames) {
    if (r == role) return name;
  }
  return "unknown";
}

std::optional<WaypointRole> ParseRole(std::string_view name) {
  for (const auto &[r, n] : kRoleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

double PathLength(std::span<const Waypoint> waypoints) {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += Distance(waypoints[i - 1].position, waypoints[i].position);
  }
  return total;
}

std::vector<double> LineOffsets(double width, double spacing) {
  RequirePositive(spacing, "line spacing");
  if (!(width >= 0.0) || !std::isfinite(width)) {
    throw PlanError(PlanError::Kind::kInvalidArgument,
                    fmt::format("strip width must be finite and >= 0, got {}", width));
  }
  const auto full = static_cast<std::size_t>(std::floor((width + kGeometryTolerance) / spacing));
  std::vector<double> offsets;
  offsets.reserve(full + 2);
  for (std::size_t k = 0; k <= full; ++k) offsets.push_back(static_cast<double>(k) * spacing);
  if (width - offsets.back() > kGeometryTolerance) {
    offsets.push_back(width);
  } else {
    offsets.back() = width;
  }
  return offsets;
}

CoveragePath PlanForDirection(const ConvexPolygon &eroded, double spacing, const Point2D &start,
                              const Point2D &end, const Point2D &direction) {
  RequirePositive(spacing, "line spacing");
  const LineFamily family = BuildFamily(eroded, Normalized(direction), spacing, nullptr);
  return ToPath(BestRoute(eroded, family, start, end), family, spacing);
}

CoveragePath Rcpp(const ConvexPolygon &eroded, double spacing, const Point2D &start,
                  const Point2D &end) {
  RequirePositive(spacing, "line spacing");
  Route best;
  LineFamily best_family;
  for (const AntipodalPair &pair : EdgeAntipodalPairs(eroded)) {
    const Point2D along = Normalized(eroded.edge(pair.edge).b - eroded.edge(pair.edge).a);
    // Lines anchored on the edge, then on the opposite support line; the
    // leftover partial strip lands on different sides.
    std::array<LineFamily, 2> families = {BuildFamily(eroded, along, spacing, &pair),
                                          BuildFamily(eroded, -along, spacing, nullptr)};
    for (LineFamily &family : families) {
      Route r = BestRoute(eroded, family, start, end);
      // Strictly shorter only: equal lengths keep the lower edge index.
      if (r.length < best.length - kLengthTieTolerance) {
        best = std::move(r);
        best_family = std::move(family);
      }
    }
  }
  return ToPath(std::move(best), best_family, spacing);
}

std::vector<Waypoint> CornerTour(const ConvexPolygon &eroded, const Point2D &from) {
  return TourFrom(eroded, NearestVertex(eroded, from), /*ccw=*/true, /*closed=*/false);
}

CoveragePath PlanCoverage(const ConvexPolygon &region, const PlanParams &params) {
  RequirePositive(params.footprint_radius, "footprint radius");
  const double spacing = params.LineSpacing();
  RequirePositive(spacing, "line spacing");
  if (!params.start.IsFinite() || !params.end.IsFinite()) {
    throw PlanError(PlanError::Kind::kInvalidArgument, "start and end must be finite");
  }

  std::optional<ConvexPolygon> eroded;
  try {
    eroded = Erode(region, params.footprint_radius);
  } catch (const GeometryError &err) {
    if (err.kind() != GeometryError::Kind::kEmptyErosion) throw;
    throw PlanError(PlanError::Kind::kFootprintTooLarge,
                    fmt::format("footprint radius {} does not fit in the region (inradius {:.6f}); "
                                "the coverage path degenerates to a single point",
                                params.footprint_radius, Inradius(region)));
  }
  if (!Contains(*eroded, params.start)) {
    throw PlanError(PlanError::Kind::kStartOutside,
                    fmt::format("start ({}, {}) is outside the region eroded by the footprint",
                                params.start.x, params.start.y));
  }
  if (!Contains(*eroded, params.end)) {
    throw PlanError(PlanError::Kind::kEndOutside,
                    fmt::format("end ({}, {}) is outside the region eroded by the footprint",
                                params.end.x, params.end.y));
  }
  return Rcpp(*eroded, spacing, params.start, params.end);
}

CoveragePath PlanBaseline(const ConvexPolygon &region, double spacing, const Point2D &start,
                          const Point2D &end) {
  RequirePositive(spacing, "line spacing");
  Route best;
  Point2D best_direction;
  std::size_t best_lines = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const Segment2D e = region.edge(i);
    const Point2D direction = Normalized(e.b - e.a);
    const Point2D normal = LeftNormal(direction);
    const Extent across = ProjectionExtent(region, normal);
    const Extent along = ProjectionExtent(region, direction);
    std::vector<Chord> chords;
    for (const double offset : BaselineOffsets(across.Length(), spacing)) {
      const double level = across.min + offset;
      const Segment2D line{normal * level + direction * (along.min - 1.0),
                           normal * level + direction * (along.max + 1.0)};
      if (const auto clipped = ClipSegment(region, line)) {
        chords.push_back({clipped->a, clipped->b});
      }
    }
    if (chords.empty()) continue;
    for (const bool descending : {false, true}) {
      for (const bool forward : {true, false}) {
        Route r = BaselineRoute(chords, direction, descending, forward, start, end);
        if (Better(r, best)) {
          best = std::move(r);
          best_direction = direction;
          best_lines = chords.size();
        }
      }
    }
  }
  CoveragePath path;
  path.waypoints = std::move(best.waypoints);
  path.total_length = PathLength(path.waypoints);
  path.sweep_direction = best_direction;
  path.line_count = best_lines;
  path.line_spacing = spacing;
  return path;
}

CoveragePath WithoutCornerTour(const CoveragePath &path) {
  CoveragePath out = path;
  std::erase_if(out.waypoints,
                [](const Waypoint &w) { return w.role == WaypointRole::kCornerTour; });
  out.total_length = PathLength(out.waypoints);
  return out;
}

}  // namespace spraycov
