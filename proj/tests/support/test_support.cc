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

#include "support/test_support.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unistd.h>

namespace spraycov::testing {
namespace {

constexpr double kPi = std::numbers::pi;

bool InsideCcw(std::span<const Point2D> v, const Point2D &q) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2D &a = v[i];
    const Point2D &b = v[(i + 1) % v.size()];
    if ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x) < 0.0) return false;
  }
  return true;
}

long double Det3(const long double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

ConvexPolygon RandomConvexPolygon(std::mt19937_64 &rng, int n, double diameter) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (double &a : angles) a = 2.0 * kPi * unit(rng);
    std::sort(angles.begin(), angles.end());
    bool spaced = true;
    for (int i = 0; i < n; ++i) {
      const double next = i + 1 < n ? angles[i + 1] : angles[0] + 2.0 * kPi;
      if (next - angles[i] < 0.25 * 2.0 * kPi / n) spaced = false;
    }
    if (!spaced) continue;
    const double squash = 0.5 + 0.5 * unit(rng);
    const double rot = 2.0 * kPi * unit(rng);
    std::vector<Point2D> pts;
    for (double a : angles) {
      const double x = std::cos(a);
      const double y = squash * std::sin(a);
      pts.push_back({x * std::cos(rot) - y * std::sin(rot), x * std::sin(rot) + y * std::cos(rot)});
    }
    double d = 0.0;
    for (const Point2D &p : pts) {
      for (const Point2D &q : pts) d = std::max(d, Distance(p, q));
    }
    const Point2D shift{diameter * (unit(rng) - 0.5), diameter * (unit(rng) - 0.5)};
    for (Point2D &p : pts) p = p * (diameter / d) + shift;
    try {
      return ValidateConvex(pts);
    } catch (const GeometryError &) {
    }
  }
}

Scenario RandomScenario(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> count(3, 12);
  std::uniform_real_distribution<double> diam(10.0, 100.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const int n = count(rng);
    ConvexPolygon region = RandomConvexPolygon(rng, n, diam(rng));
    const double inradius = Inradius(region);
    if (inradius < 1.0) continue;
    const double r_max = std::max(0.5, 0.1 * inradius);
    const double r = 0.5 + (r_max - 0.5) * unit(rng);
    const ConvexPolygon eroded = Erode(region, r);
    const Point2D s = RandomPointInside(rng, eroded);
    const Point2D e = RandomPointInside(rng, eroded);
    return {std::move(region), r, s, e};
  }
}

Point2D RandomPointInside(std::mt19937_64 &rng, const ConvexPolygon &p) {
  double lo_x = p.vertex(0).x, hi_x = lo_x, lo_y = p.vertex(0).y, hi_y = lo_y;
  for (const Point2D &v : p.vertices()) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  std::uniform_real_distribution<double> ux(lo_x, hi_x);
  std::uniform_real_distribution<double> uy(lo_y, hi_y);
  for (;;) {
    const Point2D q{ux(rng), uy(rng)};
    if (InsideCcw(p.vertices(), q)) return q;
  }
}

double VertexDiameter(const ConvexPolygon &p) {
  double d = 0.0;
  for (const Point2D &a : p.vertices()) {
    for (const Point2D &b : p.vertices()) d = std::max(d, Distance(a, b));
  }
  return d;
}

double MonteCarloArea(std::mt19937_64 &rng, std::span<const Point2D> ccw, std::size_t samples) {
  double lo_x = ccw[0].x, hi_x = lo_x, lo_y = ccw[0].y, hi_y = lo_y;
  for (const Point2D &v : ccw) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  std::uniform_real_distribution<double> ux(lo_x, hi_x);
  std::uniform_real_distribution<double> uy(lo_y, hi_y);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) hits += InsideCcw(ccw, {ux(rng), uy(rng)}) ? 1 : 0;
  return (hi_x - lo_x) * (hi_y - lo_y) * static_cast<double>(hits) / static_cast<double>(samples);
}

double BruteForceWidth(std::span<const Point2D> vertices, const Point2D &direction) {
  double lo = INFINITY, hi = -INFINITY;
  for (const Point2D &v : vertices) {
    const double t = v.x * direction.x + v.y * direction.y;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

double SampledBoundaryDistance(std::span<const Point2D> vertices, const Point2D &q,
                               std::size_t per_edge) {
  double best = INFINITY;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point2D &a = vertices[i];
    const Point2D &b = vertices[(i + 1) % vertices.size()];
    for (std::size_t k = 0; k <= per_edge; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(per_edge);
      best = std::min(best, Distance(q, a + (b - a) * t));
    }
  }
  return best;
}

double HalfPlaneClearance(std::span<const Point2D> ccw, const Point2D &q) {
  double best = INFINITY;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Point2D &a = ccw[i];
    const Point2D &b = ccw[(i + 1) % ccw.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    best = std::min(best, ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)) / len);
  }
  return best;
}

double MinSampledClearance(std::span<const Point2D> ccw, std::span<const Waypoint> path,
                           double step) {
  double best = INFINITY;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Point2D &b = path[i].position;
    best = std::min(best, HalfPlaneClearance(ccw, b));
    if (i == 0) continue;
    const Point2D &a = path[i - 1].position;
    const auto n = static_cast<std::size_t>(std::ceil(Distance(a, b) / step));
    for (std::size_t k = 1; k < n; ++k) {
      best = std::min(best, HalfPlaneClearance(ccw, a + (b - a) * (static_cast<double>(k) / n)));
    }
  }
  return best;
}

std::array<double, 3> NormalEquationsFit(std::span<const DropletSample> samples) {
  long double m[3][3] = {};
  long double rhs[3] = {};
  for (const DropletSample &s : samples) {
    const long double row[3] = {-static_cast<long double>(s.x) * s.x,
                                -static_cast<long double>(s.y) * s.y, 1.0L};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      rhs[i] += row[i] * s.z;
    }
  }
  const long double det = Det3(m);
  if (det == 0.0L) throw std::runtime_error("singular normal equations");
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    long double mc[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) mc[i][j] = j == c ? rhs[i] : m[i][j];
    }
    out[static_cast<std::size_t>(c)] = static_cast<double>(Det3(mc) / det);
  }
  return out;
}

double MeridianArc(double lat1_deg, double lat2_deg) {
  const double a = 6378137.0;
  const double f = 1.0 / 298.257223563;
  const double e2 = f * (2.0 - f);
  const int n = 2000;
  const double p1 = lat1_deg * kPi / 180.0;
  const double p2 = lat2_deg * kPi / 180.0;
  const double h = (p2 - p1) / n;
  auto m = [&](double phi) {
    const double s = std::sin(phi);
    return a * (1.0 - e2) / std::pow(1.0 - e2 * s * s, 1.5);
  };
  double sum = m(p1) + m(p2);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * m(p1 + i * h);
  return sum * h / 3.0;
}

double VincentyDistance(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
  const double a = 6378137.0;
  const double f = 1.0 / 298.257223563;
  const double b = a * (1.0 - f);
  const double rad = kPi / 180.0;
  const double l = (lon2_deg - lon1_deg) * rad;
  const double u1 = std::atan((1.0 - f) * std::tan(lat1_deg * rad));
  const double u2 = std::atan((1.0 - f) * std::tan(lat2_deg * rad));
  const double su1 = std::sin(u1), cu1 = std::cos(u1), su2 = std::sin(u2), cu2 = std::cos(u2);
  double lambda = l;
  double sin_sigma = 0, cos_sigma = 0, sigma = 0, cos2_alpha = 0, cos_2sm = 0;
  for (int it = 0; it < 200; ++it) {
    const double sl = std::sin(lambda), cl = std::cos(lambda);
    sin_sigma = std::hypot(cu2 * sl, cu1 * su2 - su1 * cu2 * cl);
    if (sin_sigma == 0.0) return 0.0;
    cos_sigma = su1 * su2 + cu1 * cu2 * cl;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cu1 * cu2 * sl / sin_sigma;
    cos2_alpha = 1.0 - sin_alpha * sin_alpha;
    cos_2sm = cos2_alpha != 0.0 ? cos_sigma - 2.0 * su1 * su2 / cos2_alpha : 0.0;
    const double c = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
    const double prev = lambda;
    lambda = l + (1.0 - c) * f * sin_alpha *
                     (sigma + c * sin_sigma *
                                  (cos_2sm + c * cos_sigma * (-1.0 + 2.0 * cos_2sm * cos_2sm)));
    if (std::abs(lambda - prev) < 1e-14) break;
  }
  const double u_sq = cos2_alpha * (a * a - b * b) / (b * b);
  const double big_a =
      1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      big_b * sin_sigma *
      (cos_2sm + big_b / 4.0 *
                     (cos_sigma * (-1.0 + 2.0 * cos_2sm * cos_2sm) -
                      big_b / 6.0 * cos_2sm * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                          (-3.0 + 4.0 * cos_2sm * cos_2sm)));
  return b * big_a * (sigma - delta_sigma);
}

std::filesystem::path MakeTempDir(const std::string &tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("spraycov_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

ConvexPolygon Square(double side) {
  const std::vector<Point2D> v{{0, 0}, {side, 0}, {side, side}, {0, side}};
  return ValidateConvex(v);
}

}  // namespace spraycov::testing
