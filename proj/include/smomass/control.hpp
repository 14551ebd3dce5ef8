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

struct ControlGains {
  double kp = 2.5;
  double kd = 0.5;
};

/// u = G(q_hat) + kp (q_d - q_hat) + kd (qd_d - qd_hat), G from `model`.
Eigen::VectorXd pdGravityTorque(const Eigen::VectorXd& q_hat, const Eigen::VectorXd& qd_hat,
                                const Eigen::VectorXd& q_d, const Eigen::VectorXd& qd_d, const KinematicModel& model,
                                const ControlGains& gains);

}  // namespace smomass
