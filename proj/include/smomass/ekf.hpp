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

/// Continuous-time EKF over the stacked state [q; qd]; positions are measured.
struct EkfState {
  Eigen::VectorXd x1_hat;
  Eigen::VectorXd x2_hat;
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;

  /// x1 = q0, x2 = 0, Q = q_scale I, R = r_scale I, P = p0_scale I.
  static EkfState initial(const Eigen::VectorXd& q0, double q_scale = 0.003, double r_scale = 0.001,
                          double p0_scale = 0.003);
};

/// Measurement Jacobian [I 0] for the [q; qd] ordering.
Eigen::MatrixXd measurementJacobian(Eigen::Index dof);

/// K = P H^T R^-1.
Eigen::MatrixXd kalmanGain(const EkfState& state);

/// Jacobian of [qd; f(q, qd, u)] by central differences (step 1e-6) on the
/// acceleration block; the kinematic block is [0 I].
Eigen::MatrixXd stateJacobian(const KinematicModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& qd,
                              const Eigen::VectorXd& u, double step = 1e-6);

/// One explicit-Euler step of
///   x1' = x2 + K1 y,  x2' = f(x1, x2, u) + K2 y,  P' = F P + P F^T - K R K^T + Q
/// with y = q_meas - x1 and f the nominal forward dynamics. P is
/// re-symmetrized each step; losing positive semidefiniteness raises
/// CovarianceError.
EkfState ekfStep(const EkfState& state, const Eigen::VectorXd& q_meas, const Eigen::VectorXd& u,
                 const KinematicModel& model, double dt);

}  // namespace smomass
