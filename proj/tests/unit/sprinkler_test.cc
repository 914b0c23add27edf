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

#include "spraycov/sprinkler.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace spraycov {
namespace {

std::vector<DropletSample> Grid(const Paraboloid &m, int n, double half_span) {
  std::vector<DropletSample> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -half_span + 2.0 * half_span * i / (n - 1);
      const double y = -half_span + 2.0 * half_span * j / (n - 1);
      out.push_back({x, y, Evaluate(m, x, y)});
    }
  }
  return out;
}

SprinklerError::Kind FitErrorKind(const std::vector<DropletSample> &samples) {
  try {
    Fit(samples);
  } catch (const SprinklerError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a SprinklerError";
  return SprinklerError::Kind::kInvalidArgument;
}

TEST(EvaluateTest, Examples) {
  EXPECT_DOUBLE_EQ(Evaluate({1, 1, 4}, 0, 0), 4.0);
  EXPECT_DOUBLE_EQ(Evaluate({1, 1, 4}, 2, 0), 0.0);
  EXPECT_NEAR(Evaluate({0.5, 0.3, 3}, 1, 2), 1.3, 1e-15);
}

TEST(EvaluateTest, EvenInBothAxes) {
  const Paraboloid m{0.7, 0.2, 5};
  for (double x : {0.3, 1.7, 4.0}) {
    for (double y : {0.1, 2.2}) {
      EXPECT_EQ(Evaluate(m, x, y), Evaluate(m, -x, y));
      EXPECT_EQ(Evaluate(m, x, y), Evaluate(m, x, -y));
    }
  }
}

TEST(FootprintTest, RejectsInvalidModel) {
  EXPECT_THROW(Footprint({0, 1, 1}), SprinklerError);
  EXPECT_THROW(Footprint({1, 1, -1}), SprinklerError);
  EXPECT_FALSE((Paraboloid{1, NAN, 1}.IsValid()));
}

TEST(SampleNoisyTest, ZeroSigmaIsExact) {
  std::mt19937_64 rng(1);
  const Paraboloid m{0.5, 0.3, 3};
  for (double x : {-1.0, 0.0, 2.5}) {
    EXPECT_EQ(SampleNoisy(m, {0.0}, x, 1.0, rng), Evaluate(m, x, 1));
  }
}

TEST(SampleNoisyTest, MeanAndSpreadMatchNoiseModel) {
  std::mt19937_64 rng(2);
  const Paraboloid m{0.5, 0.3, 3};
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = SampleNoisy(m, {0.1}, 1.0, 2.0, rng);
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
  EXPECT_NEAR(mean, Evaluate(m, 1, 2), 0.002);
  EXPECT_GE(sd, 0.098);
  EXPECT_LE(sd, 0.102);
}

TEST(SampleNoisyTest, DeterministicForSeed) {
  std::mt19937_64 a(9), b(9);
  const Paraboloid m{1, 2, 3};
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(SampleNoisy(m, {0.2}, i, i, a), SampleNoisy(m, {0.2}, i, i, b));
  }
}

TEST(FitTest, RecoversNoiselessGrid) {
  const Paraboloid truth{0.5, 0.3, 3};
  const FitResult fit = Fit(Grid(truth, 5, 2.0));
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.model.curvature_x, 0.5, 1e-8);
  EXPECT_NEAR(fit.model.curvature_y, 0.3, 1e-8);
  EXPECT_NEAR(fit.model.altitude, 3.0, 1e-8);
  EXPECT_LT(fit.residual_rms, 1e-10);
}

TEST(FitTest, ConvergesFromPoorInitialGuess) {
  const Paraboloid truth{0.5, 0.3, 3};
  const FitResult fit = Fit(Grid(truth, 5, 2.0), Paraboloid{5.0, 5.0, 0.1});
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.model.curvature_x, 0.5, 1e-8);
  EXPECT_NEAR(fit.model.curvature_y, 0.3, 1e-8);
  EXPECT_NEAR(fit.model.altitude, 3.0, 1e-8);
}

TEST(FitTest, RefitOfFittedModelIsFixedPoint) {
  std::mt19937_64 rng(3);
  const Paraboloid truth{0.8, 0.4, 6};
  std::vector<DropletSample> noisy = Grid(truth, 7, 2.0);
  for (DropletSample &s : noisy) s.z = SampleNoisy(truth, {0.05}, s.x, s.y, rng);
  const FitResult first = Fit(noisy);
  const FitResult second = Fit(Grid(first.model, 7, 2.0));
  EXPECT_NEAR(second.model.curvature_x, first.model.curvature_x, 1e-10);
  EXPECT_NEAR(second.model.curvature_y, first.model.curvature_y, 1e-10);
  EXPECT_NEAR(second.model.altitude, first.model.altitude, 1e-10);
}

TEST(FitTest, MatchesNormalEquationsOracle) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coef(0.1, 3.0);
  std::uniform_real_distribution<double> alt(1.0, 20.0);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Paraboloid truth{coef(rng), coef(rng), alt(rng)};
    std::vector<DropletSample> samples;
    for (int i = 0; i < 60; ++i) {
      const double x = pos(rng), y = pos(rng);
      samples.push_back({x, y, SampleNoisy(truth, {0.05}, x, y, rng)});
    }
    const auto oracle = testing::NormalEquationsFit(samples);
    const FitResult fit = Fit(samples);
    EXPECT_NEAR(fit.model.curvature_x, oracle[0], 1e-8);
    EXPECT_NEAR(fit.model.curvature_y, oracle[1], 1e-8);
    EXPECT_NEAR(fit.model.altitude, oracle[2], 1e-8);
  }
}

TEST(FitTest, NoisyEstimateIsAccurateAcrossSeeds) {
  const Paraboloid truth{0.5, 0.3, 3};
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::vector<DropletSample> samples;
    for (int i = 0; i < 200; ++i) {
      const double x = pos(rng), y = pos(rng);
      samples.push_back({x, y, SampleNoisy(truth, {0.05}, x, y, rng)});
    }
    good += std::abs(Fit(samples).model.curvature_x - 0.5) < 0.05 ? 1 : 0;
  }
  EXPECT_GE(good, 99);
}

TEST(FitTest, TwoSamplesAreNotIdentifiable) {
  EXPECT_EQ(FitErrorKind({{0, 0, 1}, {1, 1, 0}}), SprinklerError::Kind::kNotIdentifiable);
}

TEST(FitTest, RankDeficientDesignIsNotIdentifiable) {
  // x^2 = y^2 on every sample: A and B cannot be separated.
  std::vector<DropletSample> diag;
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0}) diag.push_back({t, -t, 3.0 - 0.8 * t * t});
  EXPECT_EQ(FitErrorKind(diag), SprinklerError::Kind::kNotIdentifiable);
}

TEST(FitTest, UpwardSurfaceIsNonPositiveFit) {
  std::vector<DropletSample> bowl;
  for (const DropletSample &s : Grid({0.5, 0.3, 3}, 5, 2.0)) bowl.push_back({s.x, s.y, -s.z});
  EXPECT_EQ(FitErrorKind(bowl), SprinklerError::Kind::kNonPositiveFit);
}

TEST(FitTest, ResidualJacobianMatchesCentralDifferences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::vector<DropletSample> samples;
  for (int i = 0; i < 30; ++i) samples.push_back({pos(rng), pos(rng), pos(rng)});
  const ResidualFunction f = ParaboloidResidual(samples);
  Eigen::VectorXd p(3);
  p << 0.7, 1.3, 4.0;
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  f(p, r, &jac);
  for (int c = 0; c < 3; ++c) {
    const double h = 1e-5;
    Eigen::VectorXd plus = p, minus = p, rp, rm;
    plus(c) += h;
    minus(c) -= h;
    f(plus, rp, nullptr);
    f(minus, rm, nullptr);
    const Eigen::VectorXd fd = (rp - rm) / (2.0 * h);
    for (Eigen::Index i = 0; i < fd.size(); ++i) {
      EXPECT_LE(std::abs(fd(i) - jac(i, c)), 1e-6 * std::max(1.0, std::abs(jac(i, c))));
    }
  }
  // Analytic columns are (-x^2, -y^2, 1).
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    EXPECT_EQ(jac(k, 0), -samples[i].x * samples[i].x);
    EXPECT_EQ(jac(k, 1), -samples[i].y * samples[i].y);
    EXPECT_EQ(jac(k, 2), 1.0);
  }
}

TEST(FootprintTest, Examples) {
  EXPECT_DOUBLE_EQ(Footprint({1, 1, 4}).radius, 2.0);
  EXPECT_DOUBLE_EQ(Footprint({0.5, 2.0, 2}).radius, 1.0);
  const FootprintDisk d = Footprint({1, 1, 4}, {3, -2});
  EXPECT_EQ(d.center, (Point2D{3, -2}));
}

TEST(FootprintTest, RadiusIsRootAlongSteeperAxis) {
  const Paraboloid m{0.5, 2.0, 2};
  // Bisection for evaluate(m, 0, y) = 0 on the steeper (y) axis.
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (Evaluate(m, 0, mid) > 0.0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(Footprint(m).radius, lo, 1e-12);
}

TEST(FootprintTest, DiskLiesUnderTheSpray) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coef(0.05, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Paraboloid m{coef(rng), coef(rng), 1.0 + 10.0 * coef(rng)};
    const double r = Footprint(m).radius;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double x = -r + 2.0 * r * i / 40.0, y = -r + 2.0 * r * j / 40.0;
        if (x * x + y * y > r * r) continue;
        EXPECT_GE(Evaluate(m, x, y), -1e-12 * m.altitude);
      }
    }
  }
}

TEST(FootprintRadiusFromAltitudeTest, Examples) {
  EXPECT_DOUBLE_EQ(FootprintRadiusFromAltitude({1, 1, 4}, 9.0), 3.0);
  EXPECT_DOUBLE_EQ(FootprintRadiusFromAltitude({0.5, 2.0, 2}, 8.0), 2.0);
  const Paraboloid m{0.3, 0.7, 5};
  EXPECT_NEAR(FootprintRadiusFromAltitude(m, 20.0) / FootprintRadiusFromAltitude(m, 10.0),
              std::sqrt(2.0), 1e-15);
  EXPECT_THROW(FootprintRadiusFromAltitude(m, 0.0), SprinklerError);
}

TEST(FootprintRadiusFromAltitudeTest, CharacterizationFixtureGivesMissionRadius) {
  // A = B = h / r^2 reproduces r = 1.5 m at h = 10 m.
  const Paraboloid m{10.0 / 2.25, 10.0 / 2.25, 10.0};
  EXPECT_NEAR(Footprint(m).radius, 1.5, 1e-12);
}

}  // namespace
}  // namespace spraycov
