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

// Rasterized ground-truth evaluation of a coverage path: which cells the
// footprint disk sweeps, what fraction of the region and of its eroded
// core that is, and whether the footprint ever crosses the region boundary.

#ifndef SPRAYCOV_COVERAGE_EVAL_H_
#define SPRAYCOV_COVERAGE_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spraycov/geometry2d.h"
#include "spraycov/planner.h"

namespace spraycov {

class CoverageError : public std::runtime_error {
 public:
  enum class Kind { kInvalidArgument, kPathOutsideGrid };

  CoverageError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Half-open run [begin, end) of cell columns in one grid row.
struct CellSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// Square-cell raster over an axis-aligned box. A cell counts as covered or
/// as inside a region according to its center.
class CoverageGrid {
 public:
  /// Grid over `region` inflated by `radius`, further grown to contain
  /// `extra` (if any) inflated by `radius`. `eroded` is the second mask.
  static CoverageGrid ForRegion(const ConvexPolygon &region, const ConvexPolygon &eroded,
                                double radius, double cell_size,
                                std::span<const Waypoint> extra = {});

  double cell_size() const { return cell_size_; }
  double min_x() const { return min_x_; }
  double min_y() const { return min_y_; }
  double max_x() const { return min_x_ + static_cast<double>(nx_) * cell_size_; }
  double max_y() const { return min_y_ + static_cast<double>(ny_) * cell_size_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }

  Point2D CellCenter(std::size_t ix, std::size_t iy) const;
  bool covered(std::size_t ix, std::size_t iy) const { return cells_[iy * nx_ + ix] != 0; }
  std::size_t CoveredCount() const;

  /// Cells of row iy whose centers are inside the region / eroded region.
  CellSpan RegionSpan(std::size_t iy) const { return region_spans_[iy]; }
  CellSpan ErodedSpan(std::size_t iy) const { return eroded_spans_[iy]; }
  bool InRegion(std::size_t ix, std::size_t iy) const;
  bool InEroded(std::size_t ix, std::size_t iy) const;

  /// Marks cells whose centers are within `radius` of the segment a-b
  /// (a == b gives a disk). Throws kPathOutsideGrid if the capsule leaves
  /// the grid box.
  void MarkCapsule(const Point2D &a, const Point2D &b, double radius);

 private:
  CoverageGrid() = default;

  double cell_size_ = 0.0;
  double min_x_ = 0.0;
  double min_y_ = 0.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<CellSpan> region_spans_;
  std::vector<CellSpan> eroded_spans_;
};

/// Copy of `grid` with every cell within r of the path marked covered.
/// Idempotent; an empty path marks nothing.
CoverageGrid SweepCoverage(std::span<const Waypoint> path, double radius, CoverageGrid grid);

struct EvalReport {
  double covered_fraction_region = 0.0;
  double covered_fraction_eroded = 0.0;
  double path_length = 0.0;
  double est_flight_time = 0.0;
  /// Sampled path points closer than r - tolerance to the region boundary.
  std::size_t safety_violations = 0;
  /// max(0, r - smallest sampled boundary distance).
  double max_incursion = 0.0;
};

struct EvalOptions {
  double speed = 2.0;
  /// r / 50 when unset.
  std::optional<double> cell_size;
  double sample_step = 0.01;
  double safety_tolerance = 1e-6;
};

EvalReport EvaluatePath(const ConvexPolygon &region, const ConvexPolygon &eroded,
                        std::span<const Waypoint> path, double radius,
                        const EvalOptions &options = {});

struct SafetyAudit {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_clearance = 0.0;
};

/// Samples the path every `step` meters (segment ends included) and checks
/// DistanceToBoundary(region, p) >= radius - tolerance.
SafetyAudit AuditSafety(const ConvexPolygon &region, std::span<const Waypoint> path,
                        double radius, double step = 0.01, double tolerance = 1e-6);

struct UncoveredSummary {
  std::size_t uncovered_cells = 0;
  /// Largest DistanceToBoundary over uncovered cell centers inside the
  /// region; 0 when everything is covered.
  double max_distance_to_boundary = 0.0;
  /// Every uncovered cell lies within r + cell_size of the boundary.
  bool confined_to_boundary_band = true;
};

UncoveredSummary UncoveredRegions(const ConvexPolygon &region, const CoverageGrid &grid,
                                  double radius);

}  // namespace spraycov

#endif  // SPRAYCOV_COVERAGE_EVAL_H_
