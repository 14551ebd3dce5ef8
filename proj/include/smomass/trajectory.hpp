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

#include "smomass/types.hpp"

namespace smomass {

/// Per-joint quintic q(t) = sum_k coeffs(i, k) t^k on [0, duration].
struct TrajectoryPlan {
  Eigen::MatrixXd coeffs;  ///< dof x 6
  double duration = 0.0;
  Eigen::VectorXd q_start;
  Eigen::VectorXd q_goal;
};

struct TrajectorySample {
  Eigen::VectorXd q;
  Eigen::VectorXd qd;
  Eigen::VectorXd qdd;
};

/// Quintic meeting position, velocity and acceleration at both ends. Empty
/// boundary vectors mean zero.
TrajectoryPlan planQuintic(const Eigen::VectorXd& q_start, const Eigen::VectorXd& q_goal, double duration,
                           const Eigen::VectorXd& v_start = {}, const Eigen::VectorXd& v_goal = {},
                           const Eigen::VectorXd& a_start = {}, const Eigen::VectorXd& a_goal = {});

/// t is clamped below at 0; past the duration the plan reports (q_goal, 0, 0).
TrajectorySample sampleTrajectory(const TrajectoryPlan& plan, double t);

}  // namespace smomass
