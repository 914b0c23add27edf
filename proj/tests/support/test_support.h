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

// Shared fixtures for the test binaries: random scenario generators and
// oracles that are implemented independently of the library under test.

#ifndef SPRAYCOV_TESTS_SUPPORT_TEST_SUPPORT_H_
#define SPRAYCOV_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <array>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "spraycov/geodesy.h"
#include "spraycov/geometry2d.h"
#include "spraycov/planner.h"
#include "spraycov/sprinkler.h"

namespace spraycov::testing {

// Strictly convex polygon with n vertices and vertex diameter exactly
// `diameter`: points on a rotated, squashed circle with a minimum angular gap.
ConvexPolygon RandomConvexPolygon(std::mt19937_64 &rng, int n, double diameter);

struct Scenario {
  ConvexPolygon region;
  double radius;
  Point2D start;
  Point2D end;
};

// 3..12 vertices, diameter 10..100 m, r in [0.5, max(0.5, 0.1 * inradius)],
// start and end drawn uniformly inside the eroded region.
Scenario RandomScenario(std::mt19937_64 &rng);

// Uniform point inside p by rejection from the bounding box.
Point2D RandomPointInside(std::mt19937_64 &rng, const ConvexPolygon &p);

double VertexDiameter(const ConvexPolygon &p);

// Rejection-sampling area estimate using only half-plane sign tests.
double MonteCarloArea(std::mt19937_64 &rng, std::span<const Point2D> ccw, std::size_t samples);

// max - min of vertex projections.
double BruteForceWidth(std::span<const Point2D> vertices, const Point2D &direction);

// Distance from q to the closed polygon boundary by dense edge sampling.
double SampledBoundaryDistance(std::span<const Point2D> vertices, const Point2D &q,
                               std::size_t per_edge);

// Signed clearance of q from a CCW convex ring: the minimum over edges of
// the distance to the edge's supporting line, negative when q is outside
// some edge. Equals the boundary distance for inside points.
double HalfPlaneClearance(std::span<const Point2D> ccw, const Point2D &q);

// Minimum HalfPlaneClearance over points sampled every `step` meters along
// the waypoint polyline (plus every waypoint).
double MinSampledClearance(std::span<const Point2D> ccw, std::span<const Waypoint> path,
                           double step);

// Least squares for z = -A x^2 - B y^2 + h via 3x3 normal equations solved by
// Cramer's rule in long double.
std::array<double, 3> NormalEquationsFit(std::span<const DropletSample> samples);

// Meridian arc length between two latitudes [deg] on WGS-84 by composite
// Simpson quadrature of M(phi) = a (1 - e^2) / (1 - e^2 sin^2 phi)^1.5.
double MeridianArc(double lat1_deg, double lat2_deg);

// Vincenty inverse geodesic distance on WGS-84 [m].
double VincentyDistance(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg);

// Fresh empty directory under the system temp dir.
std::filesystem::path MakeTempDir(const std::string &tag);

// Square (0..side)^2 as a validated polygon.
ConvexPolygon Square(double side);

}  // namespace spraycov::testing

#endif  // SPRAYCOV_TESTS_SUPPORT_TEST_SUPPORT_H_
