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

#include "smomass/model.hpp"

#include <cmath>

#include "smomass/errors.hpp"

namespace smomass {

int KinematicModel::dof() const {
  int n = 0;
  for (const auto& j : joints) n += j.movable() ? 1 : 0;
  return n;
}

std::optional<int> KinematicModel::findLink(const std::string& link_name) const {
  for (std::size_t i = 0; i < links.size(); ++i)
    if (links[i].name == link_name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> KinematicModel::findJoint(const std::string& joint_name) const {
  for (std::size_t i = 0; i < joints.size(); ++i)
    if (joints[i].name == joint_name) return static_cast<int>(i);
  return std::nullopt;
}

int KinematicModel::linkIndex(const std::string& link_name) const {
  auto idx = findLink(link_name);
  if (!idx) throw UnknownLinkError("unknown link '" + link_name + "' in model '" + name + "'");
  return *idx;
}

int KinematicModel::parentJoint(int link) const {
  for (std::size_t j = 0; j < joints.size(); ++j)
    if (joints[j].child == link) return static_cast<int>(j);
  return -1;
}

std::vector<int> KinematicModel::movableJoints() const {
  std::vector<int> out(static_cast<std::size_t>(dof()), -1);
  for (std::size_t j = 0; j < joints.size(); ++j)
    if (joints[j].movable()) out[static_cast<std::size_t>(joints[j].dof_index)] = static_cast<int>(j);
  return out;
}

Eigen::VectorXd KinematicModel::viscousFriction() const {
  Eigen::VectorXd b(dof());
  for (const auto& j : joints)
    if (j.movable()) b[j.dof_index] = j.viscous_friction;
  return b;
}

bool KinematicModel::isSerialChain() const {
  std::vector<int> children(links.size(), 0);
  for (const auto& j : joints) {
    if (++children[static_cast<std::size_t>(j.parent)] > 1) return false;
  }
  return true;
}

KinematicModel scaleInertial(const KinematicModel& model, double factor) {
  KinematicModel out = model;
  for (auto& link : out.links) {
    link.mass *= factor;
    link.inertia *= factor;
  }
  return out;
}

void validate(const KinematicModel& model) {
  if (model.links.empty()) throw ValidationError("model '" + model.name + "' has no links");
  if (model.joints.size() + 1 != model.links.size())
    throw TopologyError("model '" + model.name + "' is not a single connected tree");

  for (const auto& link : model.links) {
    if (!(link.mass >= 0.0) || !std::isfinite(link.mass))
      throw ValidationError("link '" + link.name + "' has negative or non-finite mass");
    const Eigen::Matrix3d& I = link.inertia;
    const double scale = std::max(1.0, I.cwiseAbs().maxCoeff());
    if ((I - I.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw ValidationError("link '" + link.name + "' has an asymmetric inertia tensor");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(I);
    const Eigen::Vector3d p = es.eigenvalues();
    const double tol = 1e-12 * scale;
    if (p.minCoeff() < -tol)
      throw ValidationError("link '" + link.name + "' inertia is not positive semidefinite");
    if (link.mass > 0.0) {
      if (p[0] + p[1] < p[2] - tol || p[1] + p[2] < p[0] - tol || p[0] + p[2] < p[1] - tol)
        throw ValidationError("link '" + link.name + "' principal moments violate the triangle inequality");
    }
  }

  int expected_dof = 0;
  for (std::size_t j = 0; j < model.joints.size(); ++j) {
    const Joint& joint = model.joints[j];
    if (joint.parent < 0 || joint.child != static_cast<int>(j) + 1 || joint.parent > static_cast<int>(j))
      throw TopologyError("joint '" + joint.name + "' is out of topological order");
    if (joint.movable()) {
      if (std::abs(joint.axis.norm() - 1.0) > 1e-9)
        throw ValidationError("joint '" + joint.name + "' axis is not a unit vector");
      if (joint.dof_index != expected_dof++)
        throw ValidationError("joint '" + joint.name + "' has an inconsistent dof index");
    } else if (joint.dof_index != -1) {
      throw ValidationError("fixed joint '" + joint.name + "' carries a dof index");
    }
    if (joint.limits && joint.limits->has_position && joint.limits->lower > joint.limits->upper)
      throw ValidationError("joint '" + joint.name + "' has lower limit above upper limit");
    if (!(joint.viscous_friction >= 0.0))
      throw ValidationError("joint '" + joint.name + "' has negative damping");
  }
}

}  // namespace smomass
