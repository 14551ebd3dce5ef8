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

#include "smomass/control.hpp"

#include "smomass/dynamics.hpp"

namespace smomass {

Eigen::VectorXd pdGravityTorque(const Eigen::VectorXd& q_hat, const Eigen::VectorXd& qd_hat,
                                const Eigen::VectorXd& q_d, const Eigen::VectorXd& qd_d, const KinematicModel& model,
                                const ControlGains& gains) {
  return gravityVector<double>(model, q_hat) + gains.kp * (q_d - q_hat) + gains.kd * (qd_d - qd_hat);
}

}  // namespace smomass
