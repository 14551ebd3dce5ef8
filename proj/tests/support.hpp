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

#include <random>
#include <string>

#include <Eigen/Dense>

#include "smomass/model.hpp"
#include "smomass/urdf.hpp"

namespace testing_support {

inline std::string dataPath(const std::string& relative) { return std::string(SMOMASS_DATA_DIR) + "/" + relative; }

inline smomass::KinematicModel leftArm() { return smomass::loadUrdfFile(dataPath("urdf/justina_left_arm.urdf")); }
inline smomass::KinematicModel katana() { return smomass::loadUrdfFile(dataPath("urdf/katana.urdf")); }
inline smomass::KinematicModel fullRobotArm() {
  return smomass::loadUrdfFile(dataPath("urdf/justina_full.urdf"), "torso_link", "la_grip_center");
}

// Uniform sample inside the joint limits (or [-pi, pi] without limits).
inline Eigen::VectorXd randomConfiguration(const smomass::KinematicModel& model, std::mt19937_64& rng) {
  Eigen::VectorXd q(model.dof());
  for (const auto& j : model.joints) {
    if (!j.movable()) continue;
    double lo = -3.14159, hi = 3.14159;
    if (j.limits && j.limits->has_position) {
      lo = j.limits->lower;
      hi = j.limits->upper;
    }
    q[j.dof_index] = std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  return q;
}

inline Eigen::VectorXd randomVector(Eigen::Index n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

}  // namespace testing_support
