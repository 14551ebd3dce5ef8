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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "smomass/types.hpp"

namespace smomass {

struct Link {
  std::string name;
  double mass = 0.0;
  /// Center of mass in the link frame.
  Eigen::Vector3d center_of_mass = Eigen::Vector3d::Zero();
  /// Rotational inertia about the center of mass, link-frame axes.
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();
};

enum class JointKind { Revolute, Continuous, Fixed };

struct JointLimits {
  bool has_position = false;
  double lower = 0.0;
  double upper = 0.0;
  /// Zero when unspecified.
  double effort = 0.0;
  double velocity = 0.0;
};

struct Joint {
  std::string name;
  JointKind kind = JointKind::Fixed;
  int parent = -1;  ///< link index
  int child = -1;   ///< link index
  Eigen::Isometry3d origin = Eigen::Isometry3d::Identity();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  std::optional<JointLimits> limits;
  double viscous_friction = 0.0;
  /// Position in q, or -1 for fixed joints.
  int dof_index = -1;

  bool movable() const { return kind != JointKind::Fixed; }
};

/// Tree of rigid links joined by revolute/continuous/fixed joints.
///
/// Joints are stored in topological order (a joint's parent link is the root
/// or the child of an earlier joint) and links are stored root first, then in
/// the order their parent joints appear. Models handed to the dynamics
/// routines are expected to be serial chains; see extractChain().
struct KinematicModel {
  std::string name;
  std::vector<Link> links;
  std::vector<Joint> joints;
  Eigen::Vector3d gravity{0.0, 0.0, -9.81};

  int dof() const;
  int root() const { return 0; }

  std::optional<int> findLink(const std::string& link_name) const;
  std::optional<int> findJoint(const std::string& joint_name) const;
  /// Index of the link throws UnknownLinkError when absent.
  int linkIndex(const std::string& link_name) const;
  /// Joint whose child is `link`, or -1 for the root.
  int parentJoint(int link) const;
  /// Joint indices of the movable joints, ordered by dof_index.
  std::vector<int> movableJoints() const;
  /// Viscous friction coefficients as the diagonal of B.
  Eigen::VectorXd viscousFriction() const;
  bool isSerialChain() const;
};

/// Copy of `model` with every link mass and inertia multiplied by `factor`.
KinematicModel scaleInertial(const KinematicModel& model, double factor);

/// Checks the invariants listed on KinematicModel/Link/Joint; throws
/// ValidationError or TopologyError.
void validate(const KinematicModel& model);

}  // namespace smomass
