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

#include "spraycov/coverage_eval.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace spraycov {
namespace {

// Slack on "within r" so centers exactly at distance r count as covered.
constexpr double kReachSlack = 1e-9;

struct Interval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool empty() const { return !(lo <= hi); }
  void Include(double a, double b) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
};

// x-range where alpha * x + beta lies in [lo, hi]; `in` is narrowed.
void Restrict(Interval &in, double alpha, double beta, double lo, double hi) {
  if (alpha == 0.0) {
    if (beta < lo || beta > hi) in = Interval{};
    return;
  }
  double a = (lo - beta) / alpha;
  double b = (hi - beta) / alpha;
  if (a > b) std::swap(a, b);
  in.lo = std::max(in.lo, a);
  in.hi = std::min(in.hi, b);
}

// Points (x, y) within `radius` of segment a-b, for fixed y.
Interval CapsuleRow(const Point2D &a, const Point2D &b, double radius, double y) {
  Interval out;
  for (const Point2D &c : {a, b}) {
    const double dy = y - c.y;
    if (std::abs(dy) <= radius) {
      const double w = std::sqrt(radius * radius - dy * dy);
      out.Include(c.x - w, c.x + w);
    }
  }
  const Point2D d = b - a;
  const double len = d.Norm();
  if (len > 0.0) {
    const Point2D u = d / len;
    const Point2D v = LeftNormal(u);
    // Rectangle: 0 <= (p - a).u <= len, |(p - a).v| <= radius.
    Interval rect{-std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
    Restrict(rect, u.x, (y - a.y) * u.y - a.x * u.x, 0.0, len);
    Restrict(rect, v.x, (y - a.y) * v.y - a.x * v.x, -radius, radius);
    if (!rect.empty()) out.Include(rect.lo, rect.hi);
  }
  return out;
}

// x-range of the convex polygon on the horizontal line at y.
Interval PolygonRow(const ConvexPolygon &p, double y) {
  Interval out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2D &a = p.vertex(i);
    const Point2D &b = p.vertex(i + 1);
    if (a.y == b.y) {
      if (a.y == y) out.Include(std::min(a.x, b.x), std::max(a.x, b.x));
      continue;
    }
    if (y < std::min(a.y, b.y) || y > std::max(a.y, b.y)) continue;
    const double x = a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
    out.Include(x, x);
  }
  return out;
}

}  // namespace

CoverageGrid CoverageGrid::ForRegion(const ConvexPolygon &region, const ConvexPolygon &eroded,
                                     double radius, double cell_size,
                                     std::span<const Waypoint> extra) {
  if (!(radius > 0.0) || !(cell_size > 0.0)) {
    throw CoverageError(CoverageError::Kind::kInvalidArgument,
                        fmt::format("radius and cell size must be positive ({}, {})", radius,
                                    cell_size));
  }
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  auto include = [&](const Point2D &q) {
    lo_x = std::min(lo_x, q.x);
    lo_y = std::min(lo_y, q.y);
    hi_x = std::max(hi_x, q.x);
    hi_y = std::max(hi_y, q.y);
  };
  for (const Point2D &v : region.vertices()) include(v);
  for (const Waypoint &w : extra) include(w.position);
  // One spare cell on each side keeps capsules off the box edge.
  const double margin = radius + cell_size;

  CoverageGrid grid;
  grid.cell_size_ = cell_size;
  grid.min_x_ = lo_x - margin;
  grid.min_y_ = lo_y - margin;
  grid.nx_ = static_cast<std::size_t>(std::ceil((hi_x + margin - grid.min_x_) / cell_size));
  grid.ny_ = static_cast<std::size_t>(std::ceil((hi_y + margin - grid.min_y_) / cell_size));
  grid.cells_.assign(grid.nx_ * grid.ny_, 0);

  auto spans = [&grid](const ConvexPolygon &p) {
    std::vector<CellSpan> out(grid.ny_);
    for (std::size_t iy = 0; iy < grid.ny_; ++iy) {
      const double y = grid.min_y_ + (static_cast<double>(iy) + 0.5) * grid.cell_size_;
      const Interval row = PolygonRow(p, y);
      if (row.empty()) continue;
      const double first = std::ceil((row.lo - grid.min_x_) / grid.cell_size_ - 0.5);
      const double last = std::floor((row.hi - grid.min_x_) / grid.cell_size_ - 0.5);
      if (last < first) continue;
      out[iy] = {static_cast<std::size_t>(std::max(first, 0.0)),
                 static_cast<std::size_t>(
                     std::min(last + 1.0, static_cast<double>(grid.nx_)))};
    }
    return out;
  };
  grid.region_spans_ = spans(region);
  grid.eroded_spans_ = spans(eroded);
  return grid;
}

Point2D CoverageGrid::CellCenter(std::size_t ix, std::size_t iy) const {
  return {min_x_ + (static_cast<double>(ix) + 0.5) * cell_size_,
          min_y_ + (static_cast<double>(iy) + 0.5) * cell_size_};
}

std::size_t CoverageGrid::CoveredCount() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool CoverageGrid::InRegion(std::size_t ix, std::size_t iy) const {
  const CellSpan s = region_spans_[iy];
  return ix >= s.begin && ix < s.end;
}

bool CoverageGrid::InEroded(std::size_t ix, std::size_t iy) const {
  const CellSpan s = eroded_spans_[iy];
  return ix >= s.begin && ix < s.end;
}

void CoverageGrid::MarkCapsule(const Point2D &a, const Point2D &b, double radius) {
  const double reach = radius + kReachSlack;
  const double lo_x = std::min(a.x, b.x) - reach;
  const double hi_x = std::max(a.x, b.x) + reach;
  const double lo_y = std::min(a.y, b.y) - reach;
  const double hi_y = std::max(a.y, b.y) + reach;
  if (lo_x < min_x_ || lo_y < min_y_ || hi_x > max_x() || hi_y > max_y()) {
    throw CoverageError(CoverageError::Kind::kPathOutsideGrid,
                        fmt::format("footprint around ({:.3f}, {:.3f})-({:.3f}, {:.3f}) leaves "
                                    "the grid",
                                    a.x, a.y, b.x, b.y));
  }
  const auto row_first =
      static_cast<std::size_t>(std::max(0.0, std::ceil((lo_y - min_y_) / cell_size_ - 0.5)));
  const auto row_last = static_cast<std::size_t>(
      std::min(static_cast<double>(ny_) - 1.0, std::floor((hi_y - min_y_) / cell_size_ - 0.5)));
  for (std::size_t iy = row_first; iy <= row_last && iy < ny_; ++iy) {
    const double y = min_y_ + (static_cast<double>(iy) + 0.5) * cell_size_;
    const Interval row = CapsuleRow(a, b, reach, y);
    if (row.empty()) continue;
    const double first = std::max(0.0, std::ceil((row.lo - min_x_) / cell_size_ - 0.5));
    const double last = std::min(static_cast<double>(nx_) - 1.0,
                                 std::floor((row.hi - min_x_) / cell_size_ - 0.5));
    if (last < first) continue;
    auto *base = cells_.data() + iy * nx_;
    std::fill(base + static_cast<std::size_t>(first), base + static_cast<std::size_t>(last) + 1,
              std::uint8_t{1});
  }
}

CoverageGrid SweepCoverage(std::span<const Waypoint> path, double radius, CoverageGrid grid) {
  if (!(radius > 0.0)) {
    throw CoverageError(CoverageError::Kind::kInvalidArgument, "radius must be positive");
  }
  if (path.size() == 1) grid.MarkCapsule(path[0].position, path[0].position, radius);
  for (std::size_t i = 1; i < path.size(); ++i) {
    grid.MarkCapsule(path[i - 1].position, path[i].position, radius);
  }
  return grid;
}

SafetyAudit AuditSafety(const ConvexPolygon &region, std::span<const Waypoint> path,
                        double radius, double step, double tolerance) {
  if (!(step > 0.0)) {
    throw CoverageError(CoverageError::Kind::kInvalidArgument, "sample step must be positive");
  }
  SafetyAudit audit;
  audit.min_clearance = std::numeric_limits<double>::infinity();
  auto check = [&](const Point2D &q) {
    const double d = DistanceToBoundary(region, q);
    ++audit.samples;
    audit.min_clearance = std::min(audit.min_clearance, d);
    if (d < radius - tolerance) ++audit.violations;
  };
  if (!path.empty()) check(path[0].position);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point2D &a = path[i - 1].position;
    const Point2D &b = path[i].position;
    const auto n = static_cast<std::size_t>(std::ceil(Distance(a, b) / step));
    for (std::size_t k = 1; k <= n; ++k) {
      check(a + (b - a) * (static_cast<double>(k) / static_cast<double>(n)));
    }
  }
  if (path.empty()) audit.min_clearance = 0.0;
  return audit;
}

EvalReport EvaluatePath(const ConvexPolygon &region, const ConvexPolygon &eroded,
                        std::span<const Waypoint> path, double radius,
                        const EvalOptions &options) {
  if (!(options.speed > 0.0)) {
    throw CoverageError(CoverageError::Kind::kInvalidArgument, "speed must be positive");
  }
  const double cell = options.cell_size.value_or(radius / 50.0);
  CoverageGrid grid =
      SweepCoverage(path, radius, CoverageGrid::ForRegion(region, eroded, radius, cell, path));

  std::size_t region_cells = 0;
  std::size_t region_covered = 0;
  std::size_t eroded_cells = 0;
  std::size_t eroded_covered = 0;
  for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
    const CellSpan rs = grid.RegionSpan(iy);
    for (std::size_t ix = rs.begin; ix < rs.end; ++ix) region_covered += grid.covered(ix, iy);
    region_cells += rs.size();
    const CellSpan es = grid.ErodedSpan(iy);
    for (std::size_t ix = es.begin; ix < es.end; ++ix) eroded_covered += grid.covered(ix, iy);
    eroded_cells += es.size();
  }

  EvalReport report;
  report.covered_fraction_region =
      region_cells == 0 ? 0.0 : static_cast<double>(region_covered) / region_cells;
  report.covered_fraction_eroded =
      eroded_cells == 0 ? 0.0 : static_cast<double>(eroded_covered) / eroded_cells;
  report.path_length = PathLength(path);
  report.est_flight_time = report.path_length / options.speed;
  const SafetyAudit audit =
      AuditSafety(region, path, radius, options.sample_step, options.safety_tolerance);
  report.safety_violations = audit.violations;
  report.max_incursion = path.empty() ? 0.0 : std::max(0.0, radius - audit.min_clearance);
  return report;
}

UncoveredSummary UncoveredRegions(const ConvexPolygon &region, const CoverageGrid &grid,
                                  double radius) {
  UncoveredSummary summary;
  const double band = radius + grid.cell_size();
  for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
    const CellSpan rs = grid.RegionSpan(iy);
    for (std::size_t ix = rs.begin; ix < rs.end; ++ix) {
      if (grid.covered(ix, iy)) continue;
      ++summary.uncovered_cells;
      const double d = DistanceToBoundary(region, grid.CellCenter(ix, iy));
      summary.max_distance_to_boundary = std::max(summary.max_distance_to_boundary, d);
      if (d >= band) summary.confined_to_boundary_band = false;
    }
  }
  return summary;
}

}  // namespace spraycov
