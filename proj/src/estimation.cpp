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

#include "smomass/estimation.hpp"

#include <cmath>
#include <cstdio>

#include "smomass/dynamics.hpp"
#include "smomass/errors.hpp"
#include "smomass/kinematics.hpp"

namespace smomass {

void EstimationConfig::validate() const {
  if (!(l4 > 0.0)) throw ConfigError("estimation l4 must be > 0");
  if (!(theta_threshold > 0.0)) throw ConfigError("estimation theta_threshold must be > 0");
  if (!(speed_gate > 0.0)) throw ConfigError("estimation speed_gate must be > 0");
  if (!(g > 0.0)) throw ConfigError("estimation g must be > 0");
}

Eigen::VectorXd disturbanceTorque(const KinematicModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& z2_eq) {
  if (z2_eq.size() != model.dof()) throw std::invalid_argument("disturbanceTorque: z2_eq has wrong length");
  return massMatrix<double>(model, q) * z2_eq;
}

double estimateMass(double tau, double theta, const EstimationConfig& config) {
  if (!(std::abs(theta) > config.theta_threshold)) {
    throw SingularityError("pitch " + std::to_string(theta) + " rad is within the threshold " +
                           std::to_string(config.theta_threshold) + " rad; the payload exerts no usable torque");
  }
  return -tau / (config.g * config.l4 * std::sin(theta));
}

MassEstimate gatedMassEstimate(const Eigen::VectorXd& q, const Eigen::VectorXd& qd_hat, const Eigen::VectorXd& z2_eq,
                               const KinematicModel& model, const EstimationConfig& config, double timestamp) {
  MassEstimate est;
  est.timestamp = timestamp;
  est.theta = framePitch(forwardKinematics<double>(model, q, config.pitch_frame));
  est.tau = disturbanceTorque(model, q, z2_eq)[config.estimation_joint];
  est.gated = qd_hat.norm() > config.speed_gate || std::abs(est.theta) <= config.theta_threshold;
  est.mass = est.gated ? 0.0 : estimateMass(est.tau, est.theta, config);
  return est;
}

EstimationJoint selectEstimationJoint(const KinematicModel& model, const Eigen::VectorXd& q_home, double tolerance) {
  if (model.gravity.norm() == 0.0) throw SelectionError("model has zero gravity; no joint can be selected");
  const Eigen::Vector3d g_unit = model.gravity.normalized();
  const auto axes = jointAxesInBase(model, q_home);
  const auto movable = model.movableJoints();

  std::string report;
  for (int d = model.dof() - 1; d >= 0; --d) {
    const int j = movable[static_cast<std::size_t>(d)];
    const double c = std::abs(axes[static_cast<std::size_t>(d)].dot(g_unit));
    if (c < tolerance) {
      const Joint& joint = model.joints[static_cast<std::size_t>(j)];
      return {d, j, joint.name, model.links[static_cast<std::size_t>(joint.child)].name};
    }
  }
  for (int d = 0; d < model.dof(); ++d) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", std::abs(axes[static_cast<std::size_t>(d)].dot(g_unit)));
    report += (report.empty() ? "" : ", ") + model.joints[static_cast<std::size_t>(movable[static_cast<std::size_t>(d)])].name +
              "=" + buf;
  }
  throw SelectionError("no joint axis is within tolerance " + std::to_string(tolerance) +
                       " of perpendicular to gravity; |axis . g| per joint: [" + report + "]");
}

MovingAverage::MovingAverage(std::size_t window) : window_(window) {
  if (window_ == 0) throw ConfigError("moving average window must be >= 1");
}

double MovingAverage::push(double value) {
  samples_.push_back(value);
  if (samples_.size() > window_) samples_.pop_front();
  return this->value();
}

double MovingAverage::value() const {
  if (samples_.empty()) return 0.0;
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / static_cast<double>(samples_.size());
}

}  // namespace smomass
