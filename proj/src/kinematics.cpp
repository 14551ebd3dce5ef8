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

#include "smomass/kinematics.hpp"

#include <cmath>

namespace smomass {

EulerZYX eulerZYX(const Eigen::Matrix3d& r) {
  EulerZYX e;
  const double s = std::clamp(r(2, 0), -1.0, 1.0);
  e.pitch = -std::asin(s);
  e.degenerate = std::abs(s) > 1.0 - 1e-9;
  if (!e.degenerate) {
    e.roll = std::atan2(r(2, 1), r(2, 2));
    e.yaw = std::atan2(r(1, 0), r(0, 0));
  } else {
    e.yaw = std::atan2(-r(0, 1), r(1, 1));
  }
  return e;
}

std::vector<Eigen::Vector3d> jointAxesInBase(const KinematicModel& model, const Eigen::VectorXd& q) {
  const auto poses = linkPoses<double>(model, q);
  std::vector<Eigen::Vector3d> axes(static_cast<std::size_t>(model.dof()));
  for (const Joint& joint : model.joints) {
    if (!joint.movable()) continue;
    // The axis is fixed in the child frame (rotation about it leaves it unchanged).
    axes[static_cast<std::size_t>(joint.dof_index)] = poses[static_cast<std::size_t>(joint.child)].rotation * joint.axis;
  }
  return axes;
}

}  // namespace smomass
