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

#include "spraycov/geodesy.h"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace spraycov {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void RequireValid(const GeodeticCoord &g) {
  if (!g.IsValid()) {
    throw GeodesyError(GeodesyError::Kind::kInvalidCoordinate,
                       fmt::format("invalid geodetic coordinate ({}, {}, {})", g.latitude,
                                   g.longitude, g.altitude));
  }
}

}  // namespace

bool GeodeticCoord::IsValid() const {
  return std::isfinite(latitude) && std::isfinite(longitude) && std::isfinite(altitude) &&
         latitude >= -90.0 && latitude <= 90.0 && longitude >= -180.0 && longitude <= 180.0;
}

EcefCoord GeodeticToEcef(const GeodeticCoord &g) {
  using namespace wgs84;
  const double lat = g.latitude * kDegToRad;
  const double lon = g.longitude * kDegToRad;
  const double s = std::sin(lat);
  const double prime_vertical = kSemiMajorAxis / std::sqrt(1.0 - kEccentricitySq * s * s);
  return {(prime_vertical + g.altitude) * std::cos(lat) * std::cos(lon),
          (prime_vertical + g.altitude) * std::cos(lat) * std::sin(lon),
          (prime_vertical * (1.0 - kEccentricitySq) + g.altitude) * s};
}

GeodeticCoord EcefToGeodetic(const EcefCoord &e) {
  using namespace wgs84;
  const double a = kSemiMajorAxis;
  const double b = a * (1.0 - kFlattening);
  const double ep2 = (a * a - b * b) / (b * b);
  const double p = std::hypot(e.x, e.y);
  const double lon = std::atan2(e.y, e.x);

  // Bowring closed-form start, then fixed-point refinement of the latitude.
  const double theta = std::atan2(e.z * a, p * b);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  double lat = std::atan2(e.z + ep2 * b * st * st * st, p - kEccentricitySq * a * ct * ct * ct);
  for (int i = 0; i < 5; ++i) {
    const double s = std::sin(lat);
    const double n = a / std::sqrt(1.0 - kEccentricitySq * s * s);
    const double next = std::atan2(e.z + kEccentricitySq * n * s, p);
    if (next == lat) break;
    lat = next;
  }
  const double s = std::sin(lat);
  const double c = std::cos(lat);
  const double n = a / std::sqrt(1.0 - kEccentricitySq * s * s);
  // Numerically stable height for every latitude.
  const double h = p * c + e.z * s - a * a / n;
  return {lat / kDegToRad, lon / kDegToRad, h};
}

GeoReference::GeoReference(const GeodeticCoord &origin) : origin_(origin) {
  RequireValid(origin);
  origin_ecef_ = GeodeticToEcef(origin);
  const double lat = origin.latitude * kDegToRad;
  const double lon = origin.longitude * kDegToRad;
  const double sl = std::sin(lat);
  const double cl = std::cos(lat);
  const double so = std::sin(lon);
  const double co = std::cos(lon);
  const double rows[3][3] = {
      {-sl * co, -sl * so, cl},
      {-so, co, 0.0},
      {-cl * co, -cl * so, -sl},
  };
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rotation_[r][c] = rows[r][c];
  }
}

NedCoord GeoReference::ToNed(const GeodeticCoord &g) const {
  RequireValid(g);
  const EcefCoord e = GeodeticToEcef(g);
  const double d[3] = {e.x - origin_ecef_.x, e.y - origin_ecef_.y, e.z - origin_ecef_.z};
  double out[3];
  for (int r = 0; r < 3; ++r) {
    out[r] = rotation_[r][0] * d[0] + rotation_[r][1] * d[1] + rotation_[r][2] * d[2];
  }
  return {out[0], out[1], out[2]};
}

GeodeticCoord GeoReference::ToGeodetic(const NedCoord &n) const {
  const double range = std::sqrt(n.north * n.north + n.east * n.east + n.down * n.down);
  if (!std::isfinite(range)) {
    throw GeodesyError(GeodesyError::Kind::kInvalidCoordinate, "NED coordinate is not finite");
  }
  if (range > kMaxNedRange) {
    throw GeodesyError(GeodesyError::Kind::kOutOfFrame,
                       fmt::format("NED point {:.1f} m from origin exceeds the {:.0f} m frame",
                                   range, kMaxNedRange));
  }
  const double local[3] = {n.north, n.east, n.down};
  // Inverse rotation is the transpose.
  EcefCoord e = origin_ecef_;
  e.x += rotation_[0][0] * local[0] + rotation_[1][0] * local[1] + rotation_[2][0] * local[2];
  e.y += rotation_[0][1] * local[0] + rotation_[1][1] * local[1] + rotation_[2][1] * local[2];
  e.z += rotation_[0][2] * local[0] + rotation_[1][2] * local[1] + rotation_[2][2] * local[2];
  return EcefToGeodetic(e);
}

NedCoord GeodeticToNed(const GeoReference &ref, const GeodeticCoord &g) { return ref.ToNed(g); }

GeodeticCoord NedToGeodetic(const GeoReference &ref, const NedCoord &n) {
  return ref.ToGeodetic(n);
}

}  // namespace spraycov
