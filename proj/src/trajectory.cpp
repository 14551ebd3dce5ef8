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

#include "smomass/trajectory.hpp"

#include <stdexcept>

#include "smomass/errors.hpp"

namespace smomass {

namespace {

Eigen::VectorXd orZero(const Eigen::VectorXd& v, Eigen::Index n, const char* what) {
  if (v.size() == 0) return Eigen::VectorXd::Zero(n);
  if (v.size() != n) throw std::invalid_argument(std::string("planQuintic: ") + what + " has wrong length");
  return v;
}

}  // namespace

TrajectoryPlan planQuintic(const Eigen::VectorXd& q_start, const Eigen::VectorXd& q_goal, double duration,
                           const Eigen::VectorXd& v_start, const Eigen::VectorXd& v_goal,
                           const Eigen::VectorXd& a_start, const Eigen::VectorXd& a_goal) {
  if (!(duration > 0.0)) throw ConfigError("trajectory duration must be > 0");
  const auto n = q_start.size();
  if (q_goal.size() != n) throw std::invalid_argument("planQuintic: q_goal has wrong length");
  const Eigen::VectorXd v0 = orZero(v_start, n, "v_start");
  const Eigen::VectorXd v1 = orZero(v_goal, n, "v_goal");
  const Eigen::VectorXd a0 = orZero(a_start, n, "a_start");
  const Eigen::VectorXd a1 = orZero(a_goal, n, "a_goal");
  const double T = duration;

  TrajectoryPlan plan;
  plan.duration = T;
  plan.q_start = q_start;
  plan.q_goal = q_goal;
  plan.coeffs.resize(n, 6);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = q_goal[i] - q_start[i];
    plan.coeffs(i, 0) = q_start[i];
    plan.coeffs(i, 1) = v0[i];
    plan.coeffs(i, 2) = 0.5 * a0[i];
    plan.coeffs(i, 3) = (20.0 * d - (8.0 * v1[i] + 12.0 * v0[i]) * T - (3.0 * a0[i] - a1[i]) * T * T) / (2.0 * T * T * T);
    plan.coeffs(i, 4) =
        (-30.0 * d + (14.0 * v1[i] + 16.0 * v0[i]) * T + (3.0 * a0[i] - 2.0 * a1[i]) * T * T) / (2.0 * T * T * T * T);
    plan.coeffs(i, 5) = (12.0 * d - 6.0 * (v1[i] + v0[i]) * T + (a1[i] - a0[i]) * T * T) / (2.0 * T * T * T * T * T);
  }
  return plan;
}

TrajectorySample sampleTrajectory(const TrajectoryPlan& plan, double t) {
  const auto n = plan.q_start.size();
  if (t > plan.duration) return {plan.q_goal, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  t = std::max(t, 0.0);
  TrajectorySample s{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = plan.coeffs.row(i);
    s.q[i] = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
    s.qd[i] = c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * (4.0 * c[4] + t * 5.0 * c[5])));
    s.qdd[i] = 2.0 * c[2] + t * (6.0 * c[3] + t * (12.0 * c[4] + t * 20.0 * c[5]));
  }
  return s;
}

}  // namespace smomass
