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

#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "smomass/errors.hpp"
#include "smomass/model.hpp"
#include "smomass/types.hpp"

namespace smomass {

/// Pose of a link frame with respect to the base frame.
template <typename Scalar = double>
struct FramePose {
  Matrix3<Scalar> rotation = Matrix3<Scalar>::Identity();
  Vector3<Scalar> translation = Vector3<Scalar>::Zero();

  Vector3<Scalar> operator*(const Vector3<Scalar>& p) const { return rotation * p + translation; }
};

template <typename Scalar>
Eigen::Transform<Scalar, 3, Eigen::Isometry> jointTransform(const Joint& joint, const Scalar& angle) {
  Eigen::Transform<Scalar, 3, Eigen::Isometry> t = joint.origin.template cast<Scalar>();
  if (joint.movable()) {
    t.linear() = t.linear() * Eigen::AngleAxis<Scalar>(angle, joint.axis.template cast<Scalar>()).toRotationMatrix();
  }
  return t;
}

/// Poses of every link for configuration q (indexed like model.links).
template <typename Scalar>
std::vector<FramePose<Scalar>> linkPoses(const KinematicModel& model, const VectorX<Scalar>& q) {
  if (q.size() != model.dof()) throw std::invalid_argument("linkPoses: q has wrong length");
  std::vector<FramePose<Scalar>> poses(model.links.size());
  for (const Joint& joint : model.joints) {
    const Scalar angle = joint.movable() ? q[joint.dof_index] : Scalar(0);
    const auto local = jointTransform<Scalar>(joint, angle);
    const auto& parent = poses[static_cast<std::size_t>(joint.parent)];
    auto& child = poses[static_cast<std::size_t>(joint.child)];
    child.rotation = parent.rotation * local.linear();
    child.translation = parent.rotation * local.translation() + parent.translation;
  }
  return poses;
}

template <typename Scalar>
FramePose<Scalar> forwardKinematics(const KinematicModel& model, const VectorX<Scalar>& q, const std::string& frame) {
  const int index = model.linkIndex(frame);
  return linkPoses(model, q)[static_cast<std::size_t>(index)];
}

/// Z-Y-X (yaw-pitch-roll) decomposition R = Rz(yaw) Ry(pitch) Rx(roll).
struct EulerZYX {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
  /// |R(2,0)| within 1e-9 of one: roll and yaw are not separable.
  bool degenerate = false;
};

EulerZYX eulerZYX(const Eigen::Matrix3d& rotation);

/// Pitch of the Z-Y-X decomposition, -asin(R(2,0)), in [-pi/2, pi/2].
inline double framePitch(const FramePose<double>& pose) { return eulerZYX(pose.rotation).pitch; }

/// World-frame rotation axis of each movable joint, ordered by dof index.
std::vector<Eigen::Vector3d> jointAxesInBase(const KinematicModel& model, const Eigen::VectorXd& q);

}  // namespace smomass
