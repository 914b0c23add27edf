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

// Paraboloid spray model. The sprayed volume below a vehicle hovering at
// altitude h is bounded by z = -A x^2 - B y^2 + h; its intersection with
// the ground is the ellipse A x^2 + B y^2 = h, and the planning footprint is
// the largest disk inside that ellipse.

#ifndef SPRAYCOV_SPRINKLER_H_
#define SPRAYCOV_SPRINKLER_H_

#include <random>
#include <span>
#include <stdexcept>
#include <string>

#include "spraycov/geometry2d.h"
#include "spraycov/levenberg_marquardt.h"

namespace spraycov {

struct Paraboloid {
  double curvature_x = 0.0;  // A, 1/m
  double curvature_y = 0.0;  // B, 1/m
  double altitude = 0.0;     // h, m

  bool IsValid() const;
};

/// Additive vertical perturbation, eps ~ Normal(0, sigma^2).
struct NoiseModel {
  double sigma = 0.0;
};

/// A droplet observation on the spray boundary surface.
struct DropletSample {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct FootprintDisk {
  Point2D center;
  double radius = 0.0;
};

struct FitConfig {
  int max_iterations = 200;
  double gradient_tolerance = 1e-10;
  double initial_damping = 1e-3;
};

struct FitResult {
  Paraboloid model;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

class SprinklerError : public std::runtime_error {
 public:
  enum class Kind {
    kInvalidModel,
    kInvalidArgument,
    kNotIdentifiable,
    kNonPositiveFit,
  };

  SprinklerError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

double Evaluate(const Paraboloid &model, double x, double y);

/// Evaluate(model, x, y) plus one draw of the noise model from `rng`.
double SampleNoisy(const Paraboloid &model, const NoiseModel &noise, double x, double y,
                   std::mt19937_64 &rng);

/// Residuals f(x_i, y_i) - z_i over parameters (A, B, h); the Jacobian
/// rows are (-x^2, -y^2, 1).
ResidualFunction ParaboloidResidual(std::span<const DropletSample> samples);

/// Levenberg-Marquardt fit of (A, B, h) to boundary-surface droplets,
/// starting from `initial`.
///
/// Throws kNotIdentifiable when the design columns (x^2, y^2, 1) are rank
/// deficient and kNonPositiveFit when the optimum has A <= 0 or B <= 0.
/// Exhausting the iteration budget is not an error: the best parameters
/// are returned with converged == false.
FitResult Fit(std::span<const DropletSample> samples, const Paraboloid &initial,
              const FitConfig &config = {});

/// Same, seeded with the linear least-squares solution.
FitResult Fit(std::span<const DropletSample> samples, const FitConfig &config = {});

/// Largest disk inside the ground ellipse, centered at the vehicle's nadir:
/// r = sqrt(h / max(A, B)).
FootprintDisk Footprint(const Paraboloid &model, const Point2D &nadir = {});

/// Footprint radius when flying the same nozzle at `altitude` instead of the
/// characterization altitude.
double FootprintRadiusFromAltitude(const Paraboloid &model, double altitude);

}  // namespace spraycov

#endif  // SPRAYCOV_SPRINKLER_H_
