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

#include "spraycov/levenberg_marquardt.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spraycov {

LmResult MinimizeLevenbergMarquardt(const ResidualFunction &residual,
                                    Eigen::VectorXd initial, const LmConfig &config) {
  if (config.max_iterations <= 0 || !(config.initial_damping > 0.0)) {
    throw std::invalid_argument("LM needs positive max_iterations and initial_damping");
  }
  const Eigen::Index p = initial.size();

  LmResult result;
  result.parameters = std::move(initial);

  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  residual(result.parameters, r, &jac);
  result.cost = 0.5 * r.squaredNorm();

  double lambda = config.initial_damping;
  bool refresh = false;
  while (result.iterations < config.max_iterations) {
    if (refresh) {
      residual(result.parameters, r, &jac);
      refresh = false;
    }
    const Eigen::VectorXd gradient = jac.transpose() * r;
    if (result.cost == 0.0 || gradient.cwiseAbs().maxCoeff() < config.gradient_tolerance) {
      result.converged = true;
      result.status = LmStatus::kGradientConverged;
      return result;
    }

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::MatrixXd damped = jtj;
    for (Eigen::Index k = 0; k < p; ++k) {
      damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
    }
    const Eigen::VectorXd step = damped.ldlt().solve(-gradient);
    ++result.iterations;

    if (!step.allFinite()) {
      lambda *= 10.0;
      continue;
    }
    if (step.norm() <= 1e-15 * (result.parameters.norm() + 1e-15)) {
      result.converged = true;
      result.status = LmStatus::kStepConverged;
      return result;
    }

    const Eigen::VectorXd candidate = result.parameters + step;
    Eigen::VectorXd r_candidate;
    residual(candidate, r_candidate, nullptr);
    const double cost_candidate = 0.5 * r_candidate.squaredNorm();

    if (std::isfinite(cost_candidate) && cost_candidate < result.cost) {
      const double decrease = (result.cost - cost_candidate) / result.cost;
      result.parameters = candidate;
      result.cost = cost_candidate;
      lambda = std::max(lambda / 10.0, 1e-300);
      refresh = true;
      if (decrease < config.relative_cost_tolerance) {
        result.converged = true;
        result.status = LmStatus::kCostConverged;
        return result;
      }
    } else {
      lambda *= 10.0;
    }
  }
  result.status = LmStatus::kMaxIterations;
  return result;
}

}  // namespace spraycov
