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

// Coverage path planning for a circular footprint over a convex region.
//
// PlanCoverage runs the full pipeline: line spacing 2r, erosion of the
// region by r, a rotating-calipers back-and-forth route over the eroded
// region with flight lines joined along its frontier, and a tour of the
// eroded region's corners before landing. PlanBaseline produces the
// classic unconstrained back-and-forth route used for comparisons.

#ifndef SPRAYCOV_PLANNER_H_
#define SPRAYCOV_PLANNER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spraycov/geometry2d.h"

namespace spraycov {

/// What the segment arriving at a waypoint is doing. The first waypoint of
/// a path (the start point) is tagged kTakeoffTransit.
enum class WaypointRole {
  kTakeoffTransit,
  kSweep,
  kBoundaryConnection,
  kCornerTour,
  kLandingTransit,
};

std::string_view RoleName(WaypointRole role);
std::optional<WaypointRole> ParseRole(std::string_view name);

struct Waypoint {
  Point2D position;
  WaypointRole role = WaypointRole::kSweep;
};

struct PlanParams {
  double footprint_radius = 0.0;
  Point2D start;
  Point2D end;
  /// Distance between flight lines; 2 * footprint_radius when unset.
  std::optional<double> line_spacing;

  double LineSpacing() const { return line_spacing.value_or(2.0 * footprint_radius); }
};

struct CoveragePath {
  std::vector<Waypoint> waypoints;
  double total_length = 0.0;
  /// Unit vector along the flight lines.
  Point2D sweep_direction;
  std::size_t line_count = 0;
  double line_spacing = 0.0;
};

class PlanError : public std::runtime_error {
 public:
  enum class Kind {
    kInvalidArgument,
    kFootprintTooLarge,
    kStartOutside,
    kEndOutside,
  };

  PlanError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Sum of distances between consecutive waypoints.
double PathLength(std::span<const Waypoint> waypoints);

/// Offsets of the flight lines across a strip of the given width: 0, d, 2d,
/// ... plus a terminal line at `width` when width is not a multiple of d.
std::vector<double> LineOffsets(double width, double spacing);

/// Full coverage plan over `region`. Every waypoint lies in the region
/// eroded by the footprint radius, so the footprint never crosses the
/// region boundary. Throws PlanError::kFootprintTooLarge when the erosion is
/// empty (the plan degenerates to a single point), and kStartOutside /
/// kEndOutside when start or end are outside the eroded region.
CoveragePath PlanCoverage(const ConvexPolygon &region, const PlanParams &params);

/// Rotating-calipers route over an already eroded region: per edge
/// direction, two candidate line families (first line on the edge, or on
/// the opposite support line), each tried in both line orders and both
/// initial traversal senses, keeping the shortest complete path (transits
/// and corner tour included). Ties go to the lowest edge index, then to the
/// lexicographically smallest first sweep waypoint.
CoveragePath Rcpp(const ConvexPolygon &eroded, double spacing, const Point2D &start,
                  const Point2D &end);

/// Shortest route whose flight lines run along `direction` (any unit
/// vector). Rcpp is the minimum of this over the edge directions.
CoveragePath PlanForDirection(const ConvexPolygon &eroded, double spacing, const Point2D &start,
                              const Point2D &end, const Point2D &direction);

/// All vertices of `eroded` in counterclockwise boundary order, starting at
/// the vertex nearest to `from` (lowest index on ties). The closing edge
/// back to the first vertex is not included.
std::vector<Waypoint> CornerTour(const ConvexPolygon &eroded, const Point2D &from);

/// Unconstrained baseline over the uneroded region: flight lines at d/2
/// from the support lines, joined by perpendicular turns that may leave
/// the region. No corner tour.
CoveragePath PlanBaseline(const ConvexPolygon &region, double spacing, const Point2D &start,
                          const Point2D &end);

/// Copy of `path` with its corner-tour waypoints removed.
CoveragePath WithoutCornerTour(const CoveragePath &path);

}  // namespace spraycov

#endif  // SPRAYCOV_PLANNER_H_
