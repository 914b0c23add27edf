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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "spraycov/levenberg_marquardt.h"

namespace spraycov {
namespace {

void RequireValid(const Paraboloid &m) {
  if (!m.IsValid()) {
    throw SprinklerError(SprinklerError::Kind::kInvalidModel,
                         fmt::format("invalid paraboloid A={} B={} h={}", m.curvature_x,
                                     m.curvature_y, m.altitude));
  }
}

Eigen::MatrixXd DesignMatrix(std::span<const DropletSample> samples) {
  Eigen::MatrixXd design(static_cast<Eigen::Index>(samples.size()), 3);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = -samples[i].x * samples[i].x;
    design(row, 1) = -samples[i].y * samples[i].y;
    design(row, 2) = 1.0;
  }
  return design;
}

void CheckIdentifiable(std::span<const DropletSample> samples) {
  for (const DropletSample &s : samples) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
      throw SprinklerError(SprinklerError::Kind::kInvalidArgument,
                           "droplet samples must be finite");
    }
  }
  if (samples.size() < 3) {
    throw SprinklerError(SprinklerError::Kind::kNotIdentifiable,
                         fmt::format("not identifiable: need at least 3 droplet samples, got {}",
                                     samples.size()));
  }
  Eigen::MatrixXd design = DesignMatrix(samples);
  for (Eigen::Index c = 0; c < design.cols(); ++c) {
    const double n = design.col(c).norm();
    if (n > 0.0) design.col(c) /= n;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto &sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    throw SprinklerError(SprinklerError::Kind::kNotIdentifiable,
                         "not identifiable: droplet positions do not determine A, B and h "
                         "independently");
  }
}

}  // namespace

ResidualFunction ParaboloidResidual(std::span<const DropletSample> samples) {
  Eigen::MatrixXd design = DesignMatrix(samples);
  Eigen::VectorXd observed(design.rows());
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    observed(i) = samples[static_cast<std::size_t>(i)].z;
  }
  // r_i = (-A x_i^2 - B y_i^2 + h) - z_i, linear in (A, B, h).
  return [design = std::move(design), observed = std::move(observed)](
             const Eigen::VectorXd &params, Eigen::VectorXd &r, Eigen::MatrixXd *jacobian) {
    r = design * params - observed;
    if (jacobian != nullptr) *jacobian = design;
  };
}

bool Paraboloid::IsValid() const {
  return std::isfinite(curvature_x) && std::isfinite(curvature_y) && std::isfinite(altitude) &&
         curvature_x > 0.0 && curvature_y > 0.0 && altitude > 0.0;
}

double Evaluate(const Paraboloid &model, double x, double y) {
  return -model.curvature_x * x * x - model.curvature_y * y * y + model.altitude;
}

double SampleNoisy(const Paraboloid &model, const NoiseModel &noise, double x, double y,
                   std::mt19937_64 &rng) {
  if (!(noise.sigma >= 0.0)) {
    throw SprinklerError(SprinklerError::Kind::kInvalidArgument, "sigma must be >= 0");
  }
  const double z = Evaluate(model, x, y);
  if (noise.sigma == 0.0) return z;
  std::normal_distribution<double> eps(0.0, noise.sigma);
  return z + eps(rng);
}

FitResult Fit(std::span<const DropletSample> samples, const Paraboloid &initial,
              const FitConfig &config) {
  CheckIdentifiable(samples);

  const auto m = static_cast<Eigen::Index>(samples.size());
  const ResidualFunction residual = ParaboloidResidual(samples);

  LmConfig lm;
  lm.max_iterations = config.max_iterations;
  lm.gradient_tolerance = config.gradient_tolerance;
  lm.initial_damping = config.initial_damping;
  const LmResult solved = MinimizeLevenbergMarquardt(
      residual, Eigen::Vector3d(initial.curvature_x, initial.curvature_y, initial.altitude), lm);

  FitResult result;
  result.model = {solved.parameters(0), solved.parameters(1), solved.parameters(2)};
  result.residual_rms = std::sqrt(2.0 * solved.cost / static_cast<double>(m));
  result.iterations = solved.iterations;
  result.converged = solved.converged;
  if (!(result.model.curvature_x > 0.0) || !(result.model.curvature_y > 0.0)) {
    throw SprinklerError(SprinklerError::Kind::kNonPositiveFit,
                         fmt::format("fitted curvatures are not positive: A={:.6g} B={:.6g}",
                                     result.model.curvature_x, result.model.curvature_y));
  }
  return result;
}

FitResult Fit(std::span<const DropletSample> samples, const FitConfig &config) {
  CheckIdentifiable(samples);
  const Eigen::MatrixXd design = DesignMatrix(samples);
  Eigen::VectorXd observed(design.rows());
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    observed(i) = samples[static_cast<std::size_t>(i)].z;
  }
  const Eigen::Vector3d seed = design.colPivHouseholderQr().solve(observed);
  return Fit(samples, Paraboloid{seed(0), seed(1), seed(2)}, config);
}

FootprintDisk Footprint(const Paraboloid &model, const Point2D &nadir) {
  RequireValid(model);
  return {nadir, std::sqrt(model.altitude / std::max(model.curvature_x, model.curvature_y))};
}

double FootprintRadiusFromAltitude(const Paraboloid &model, double altitude) {
  RequireValid(model);
  if (!(altitude > 0.0) || !std::isfinite(altitude)) {
    throw SprinklerError(SprinklerError::Kind::kInvalidArgument,
                         fmt::format("altitude must be positive, got {}", altitude));
  }
  return std::sqrt(altitude / std::max(model.curvature_x, model.curvature_y));
}

}  // namespace spraycov
