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

// Text formats: region and droplet input, QGC WPL 110 mission export,
// key=value evaluation reports, local path files and SVG figures. All
// formats are UTF-8 with '\n' line endings; writers are byte-deterministic.

#ifndef SPRAYCOV_MISSION_IO_H_
#define SPRAYCOV_MISSION_IO_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spraycov/coverage_eval.h"
#include "spraycov/geodesy.h"
#include "spraycov/geometry2d.h"
#include "spraycov/planner.h"
#include "spraycov/sprinkler.h"

namespace spraycov {

class IoError : public std::runtime_error {
 public:
  enum class Kind { kRead, kParse, kFrameMissing, kTooFewPoints, kWrite };

  IoError(Kind kind, const std::string &what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}

  Kind kind() const { return kind_; }
  /// 1-based position of the offending input; 0 when not applicable.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

// ---------------------------------------------------------------------------
// Region files
//
//   # comment
//   frame: geodetic            (or: frame: local)
//   home: 19.467468, -99.193345, 0     (optional)
//   19.4676, -99.1935          lat, lon[, alt]   or   x, y   (meters)
//   ...
// ---------------------------------------------------------------------------

enum class RegionFrame { kGeodetic, kLocal };

struct RegionFile {
  RegionFrame frame = RegionFrame::kLocal;
  /// Exactly one of these is populated, matching `frame`.
  std::vector<GeodeticCoord> geodetic_points;
  std::vector<Point2D> local_points;
  GeodeticCoord geodetic_home;
  Point2D local_home;
  /// True when no `home:` line was given and the first vertex was used.
  bool home_defaulted = false;
  std::vector<std::string> warnings;
};

RegionFile ParseRegion(std::string_view text);
RegionFile ReadRegion(const std::filesystem::path &file);

/// Region expressed in the planar local frame (x = east, y = north).
struct LocalRegion {
  std::vector<Point2D> vertices;
  Point2D home;
  /// Anchor of the local frame; for geodetic regions the home point.
  std::optional<GeoReference> reference;
};

/// Geodetic regions are projected about `origin`, or about their home point
/// when no origin is given. Local regions are used as-is and anchored at
/// `origin` (if any) for export.
LocalRegion Localize(const RegionFile &region,
                     const std::optional<GeodeticCoord> &origin = std::nullopt);

// ---------------------------------------------------------------------------
// Droplet files: one "x, y, z" triple per line (commas and/or blanks),
// '#' comments.
// ---------------------------------------------------------------------------

std::vector<DropletSample> ParseDroplets(std::string_view text);
std::vector<DropletSample> ReadDroplets(const std::filesystem::path &file);

// ---------------------------------------------------------------------------
// QGC WPL 110 missions
// ---------------------------------------------------------------------------

inline constexpr int kMavFrameGlobal = 0;
inline constexpr int kMavFrameGlobalRelativeAlt = 3;
inline constexpr int kMavCmdNavWaypoint = 16;
inline constexpr int kMavCmdNavLand = 21;
inline constexpr int kMavCmdNavTakeoff = 22;

struct MissionItem {
  int index = 0;
  int current = 0;
  int frame = kMavFrameGlobalRelativeAlt;
  int command = kMavCmdNavWaypoint;
  std::array<double, 4> params{};
  double latitude = 0.0;
  double longitude = 0.0;
  double altitude = 0.0;
  int autocontinue = 1;
};

struct MissionFile {
  std::vector<MissionItem> items;
};

/// Item 0 is home at the reference origin (absolute altitude), item 1 a
/// takeoff to `altitude` above the first waypoint, then one waypoint per
/// path point at `altitude` (relative), the last one turned into a land
/// command.
MissionFile BuildMission(const CoveragePath &path, const GeoReference &ref, double altitude);
std::string FormatMission(const MissionFile &mission);
MissionFile ParseMission(std::string_view text);
MissionFile ReadMission(const std::filesystem::path &file);
MissionFile WriteMission(const CoveragePath &path, const GeoReference &ref, double altitude,
                         const std::filesystem::path &file);

/// Planar positions of every item after home, in the frame of `ref`.
std::vector<Point2D> MissionToLocal(const MissionFile &mission, const GeoReference &ref);

// ---------------------------------------------------------------------------
// Evaluation reports: fixed key order, six decimals.
// ---------------------------------------------------------------------------

std::string FormatReport(const EvalReport &report);
void WriteReport(const EvalReport &report, const std::filesystem::path &file);

// ---------------------------------------------------------------------------
// Local path files: "frame: local" header, then "x,y,role" per waypoint.
// ---------------------------------------------------------------------------

std::string FormatPath(const CoveragePath &path);
CoveragePath ParsePath(std::string_view text);
CoveragePath ReadPath(const std::filesystem::path &file);
void WritePath(const CoveragePath &path, const std::filesystem::path &file);

// ---------------------------------------------------------------------------
// SVG figures
// ---------------------------------------------------------------------------

struct SvgStyle {
  std::string title = "coverage path";
  /// Stroke for sweep lines.
  std::string path_color = "red";
  std::string region_color = "blue";
  std::string eroded_color = "red";
  double width_px = 800.0;
};

std::string FormatSvg(const ConvexPolygon &region, const ConvexPolygon &eroded,
                      const CoveragePath &path, const SvgStyle &style = {});
void WriteSvg(const ConvexPolygon &region, const ConvexPolygon &eroded, const CoveragePath &path,
              const std::filesystem::path &file, const SvgStyle &style = {});

/// Writes `contents` verbatim; throws IoError::kWrite on failure.
void WriteTextFile(const std::filesystem::path &file, std::string_view contents);
std::string ReadTextFile(const std::filesystem::path &file);

/// Fixed-point formatting that never prints a negative zero.
std::string FormatFixed(double value, int decimals);

}  // namespace spraycov

#endif  // SPRAYCOV_MISSION_IO_H_
