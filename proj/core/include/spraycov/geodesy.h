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

// WGS-84 geodetic <-> local North-East-Down conversion about a fixed origin,
// through Earth-centred Earth-fixed coordinates.

#ifndef SPRAYCOV_GEODESY_H_
#define SPRAYCOV_GEODESY_H_

#include <stdexcept>
#include <string>

#include "spraycov/geometry2d.h"

namespace spraycov {

namespace wgs84 {
inline constexpr double kSemiMajorAxis = 6378137.0;
inline constexpr double kFlattening = 1.0 / 298.257223563;
inline constexpr double kEccentricitySq = kFlattening * (2.0 - kFlattening);
}  // namespace wgs84

/// Degrees and meters above the ellipsoid.
struct GeodeticCoord {
  double latitude = 0.0;
  double longitude = 0.0;
  double altitude = 0.0;

  bool IsValid() const;
};

struct NedCoord {
  double north = 0.0;
  double east = 0.0;
  double down = 0.0;
};

struct EcefCoord {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

class GeodesyError : public std::runtime_error {
 public:
  enum class Kind { kInvalidCoordinate, kOutOfFrame };

  GeodesyError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Tangent-frame validity bound for NedToGeodetic, meters.
inline constexpr double kMaxNedRange = 50'000.0;

EcefCoord GeodeticToEcef(const GeodeticCoord &g);
/// Bowring closed-form inverse refined by fixed-point iteration.
GeodeticCoord EcefToGeodetic(const EcefCoord &e);

/// Local tangent frame anchored at a geodetic origin.
class GeoReference {
 public:
  explicit GeoReference(const GeodeticCoord &origin);

  const GeodeticCoord &origin() const { return origin_; }

  NedCoord ToNed(const GeodeticCoord &g) const;
  /// Throws kOutOfFrame when |n| exceeds kMaxNedRange.
  GeodeticCoord ToGeodetic(const NedCoord &n) const;

 private:
  GeodeticCoord origin_;
  EcefCoord origin_ecef_;
  // Rows are the north, east and down unit vectors in ECEF.
  double rotation_[3][3];
};

NedCoord GeodeticToNed(const GeoReference &ref, const GeodeticCoord &g);
GeodeticCoord NedToGeodetic(const GeoReference &ref, const NedCoord &n);

/// Planar projection used by the planner: x = east, y = north.
inline Point2D ToPlanar(const NedCoord &n) { return {n.east, n.north}; }
inline NedCoord FromPlanar(const Point2D &p, double down = 0.0) { return {p.y, p.x, down}; }

}  // namespace spraycov

#endif  // SPRAYCOV_GEODESY_H_
