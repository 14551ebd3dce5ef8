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

#include <cstddef>
#include <deque>
#include <string>

#include "smomass/model.hpp"
#include "smomass/types.hpp"

namespace smomass {

struct EstimationConfig {
  /// Assumed distance from the estimation joint to the payload center of mass.
  double l4 = 0.21;
  double theta_threshold = 0.2;
  /// Estimates are forced to zero while the joint speed norm exceeds this.
  double speed_gate = 0.5;
  /// Dof index whose disturbance torque feeds the mass formula.
  int estimation_joint = 5;
  /// Frame whose pitch w.r.t. the base enters the mass formula.
  std::string pitch_frame;
  double g = 9.81;

  void validate() const;
};

struct MassEstimate {
  double mass = 0.0;
  double tau = 0.0;    ///< disturbance torque at the estimation joint
  double theta = 0.0;  ///< pitch of the estimation frame
  bool gated = true;
  double timestamp = 0.0;
};

/// tau_o = M(q) z2_eq.
Eigen::VectorXd disturbanceTorque(const KinematicModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& z2_eq);

/// m = -tau / (g l4 sin(theta)); throws SingularityError when |theta| <= theta_threshold.
double estimateMass(double tau, double theta, const EstimationConfig& config);

/// Mass estimate with the motion and pitch gates applied (gated => mass 0).
MassEstimate gatedMassEstimate(const Eigen::VectorXd& q, const Eigen::VectorXd& qd_hat, const Eigen::VectorXd& z2_eq,
                               const KinematicModel& model, const EstimationConfig& config, double timestamp = 0.0);

struct EstimationJoint {
  int dof_index = -1;
  int joint = -1;
  std::string joint_name;
  std::string pitch_frame;
};

/// Distal-most revolute joint whose base-frame axis at q_home satisfies
/// |axis . g_unit| < tolerance (0.17 is roughly 10 degrees from perpendicular).
EstimationJoint selectEstimationJoint(const KinematicModel& model, const Eigen::VectorXd& q_home,
                                      double tolerance = 0.17);

/// Trailing-window mean.
class MovingAverage {
 public:
  explicit MovingAverage(std::size_t window);
  double push(double value);
  double value() const;
  std::size_t size() const { return samples_.size(); }

 private:
  std::size_t window_;
  std::deque<double> samples_;
};

}  // namespace smomass
