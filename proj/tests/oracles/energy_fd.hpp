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

#include <Eigen/Dense>

#include "oracles/transforms.hpp"

namespace oracle {

// Kinetic energy from finite-difference link velocities (central, step h).
inline double kineticEnergyFd(const smomass::KinematicModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& qd,
                              double h = 1e-6) {
  const auto Tp = linkTransforms(model, q + h * qd);
  const auto Tm = linkTransforms(model, q - h * qd);
  const auto T0 = linkTransforms(model, q);
  double ke = 0.0;
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const auto& link = model.links[i];
    const Eigen::Vector4d c(link.center_of_mass.x(), link.center_of_mass.y(), link.center_of_mass.z(), 1.0);
    const Eigen::Vector3d v = ((Tp[i] * c - Tm[i] * c) / (2 * h)).head<3>();
    const Eigen::Matrix3d R = T0[i].topLeftCorner<3, 3>();
    const Eigen::Matrix3d Rdot = (Tp[i].topLeftCorner<3, 3>() - Tm[i].topLeftCorner<3, 3>()) / (2 * h);
    const Eigen::Matrix3d W = Rdot * R.transpose();
    const Eigen::Vector3d w(W(2, 1), W(0, 2), W(1, 0));
    ke += 0.5 * link.mass * v.squaredNorm() + 0.5 * w.dot(R * link.inertia * R.transpose() * w);
  }
  return ke;
}

inline double potentialEnergy(const smomass::KinematicModel& model, const Eigen::VectorXd& q) {
  const auto T = linkTransforms(model, q);
  double pe = 0.0;
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const auto& c = model.links[i].center_of_mass;
    const Eigen::Vector3d p = (T[i] * Eigen::Vector4d(c.x(), c.y(), c.z(), 1.0)).head<3>();
    pe -= model.links[i].mass * model.gravity.dot(p);
  }
  return pe;
}

// dV/dq by central differences.
inline Eigen::VectorXd gravityFd(const smomass::KinematicModel& model, const Eigen::VectorXd& q, double h = 1e-6) {
  Eigen::VectorXd g(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    Eigen::VectorXd a = q, b = q;
    a[i] += h;
    b[i] -= h;
    g[i] = (potentialEnergy(model, a) - potentialEnergy(model, b)) / (2 * h);
  }
  return g;
}

}  // namespace oracle
