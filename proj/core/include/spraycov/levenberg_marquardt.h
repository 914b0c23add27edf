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

#ifndef SPRAYCOV_LEVENBERG_MARQUARDT_H_
#define SPRAYCOV_LEVENBERG_MARQUARDT_H_

#include <functional>

#include <Eigen/Dense>

namespace spraycov {

/// Fills `residuals` (size m) at `params` and, when `jacobian` is non-null,
/// the m x p matrix of partial derivatives d residual_i / d param_j.
using ResidualFunction = std::function<void(
    const Eigen::VectorXd &params, Eigen::VectorXd &residuals, Eigen::MatrixXd *jacobian)>;

struct LmConfig {
  int max_iterations = 200;
  /// Converged once max_j |(J^T r)_j| drops below this.
  double gradient_tolerance = 1e-10;
  /// Converged once an accepted step lowers the cost by less than this
  /// fraction.
  double relative_cost_tolerance = 1e-12;
  double initial_damping = 1e-3;
};

enum class LmStatus {
  kGradientConverged,
  kCostConverged,
  kStepConverged,
  kMaxIterations,
};

struct LmResult {
  Eigen::VectorXd parameters;
  /// 0.5 * ||r||^2 at `parameters`.
  double cost = 0.0;
  /// Number of trial steps, accepted or rejected.
  int iterations = 0;
  bool converged = false;
  LmStatus status = LmStatus::kMaxIterations;
};

/// Damped Gauss-Newton minimization of 0.5 * ||r(p)||^2. The damping term
/// is lambda * diag(J^T J); lambda is divided by 10 after an accepted step
/// and multiplied by 10 after a rejected one. On kMaxIterations the best
/// parameters seen so far are returned.
LmResult MinimizeLevenbergMarquardt(const ResidualFunction &residual,
                                    Eigen::VectorXd initial, const LmConfig &config = {});

}  // namespace spraycov

#endif  // SPRAYCOV_LEVENBERG_MARQUARDT_H_
