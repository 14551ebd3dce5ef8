// Copyright 2026 The smomass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "smomass/model.hpp"
#include "smomass/types.hpp"

namespace smomass {

struct SmoGains {
  double lambda = 6.0;
  double alpha = 4.2;
};

/// Super-twisting observer state. z2_last is the most recent discontinuous
/// injection, the input to the equivalent-injection filter.
struct SmoState {
  Eigen::VectorXd x1_hat;
  Eigen::VectorXd x2_hat;
  Eigen::VectorXd z2_last;

  /// Positions seeded from a measurement, zero velocity.
  static SmoState fromMeasurement(const Eigen::VectorXd& q_meas);
};

/// sign() with sign(0) = 0.
inline double signum(double v) { return (v > 0.0) - (v < 0.0); }

/// One explicit-Euler step of
///   x1' = x2 + lambda |e|^(1/2) sign(e)
///   x2' = f(q_meas, x2, u) + alpha sign(e),   e = q_meas - x1,
/// with f the forward dynamics of `model` (the nominal arm).
/// Throws ObserverBlowupError once any |x2| exceeds 1e3.
SmoState smoStep(const SmoState& state, const Eigen::VectorXd& q_meas, const Eigen::VectorXd& u,
                 const KinematicModel& model, const SmoGains& gains, double dt);

/// Advances the observer across the sample period that ends at q_meas, with
/// `substeps` Euler steps. The position target moves linearly from q_prev
/// to q_meas; u is the torque held over the period. z2_last is the mean
/// injection over the substeps. With one substep and q_prev = q_meas this
/// is smoStep().
///
/// A single 4 ms step leaves a period-2 orbit of amplitude
/// (lambda * dt / 2)^2 in e (1.44e-4 rad for lambda = 6).
SmoState smoSample(const SmoState& state, const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_meas,
                   const Eigen::VectorXd& u, const KinematicModel& model, const SmoGains& gains, double period,
                   int substeps);

}  // namespace smomass
