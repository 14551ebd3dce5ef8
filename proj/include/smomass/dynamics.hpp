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

#include <Eigen/Cholesky>

#include "smomass/errors.hpp"
#include "smomass/kinematics.hpp"
#include "smomass/model.hpp"
#include "smomass/types.hpp"

namespace smomass {

namespace detail {

inline void checkSize(const KinematicModel& model, Eigen::Index n, const char* what) {
  if (n != model.dof())
    throw std::invalid_argument(std::string(what) + " has length " + std::to_string(n) + ", model dof is " +
                                std::to_string(model.dof()));
}

std::string chainDescription(const KinematicModel& model);

}  // namespace detail

/// Recursive Newton-Euler: M(q) qdd + C(q, qd) qd + G(q).
///
/// Gravity comes from model.gravity. Viscous friction is not included.
template <typename Scalar>
VectorX<Scalar> inverseDynamics(const KinematicModel& model, const VectorX<Scalar>& q, const VectorX<Scalar>& qd,
                                const VectorX<Scalar>& qdd) {
  detail::checkSize(model, q.size(), "q");
  detail::checkSize(model, qd.size(), "qd");
  detail::checkSize(model, qdd.size(), "qdd");

  const std::size_t nl = model.links.size();
  std::vector<Vector3<Scalar>> w(nl, Vector3<Scalar>::Zero());
  std::vector<Vector3<Scalar>> wd(nl, Vector3<Scalar>::Zero());
  std::vector<Vector3<Scalar>> a(nl, Vector3<Scalar>::Zero());
  std::vector<Matrix3<Scalar>> rot(model.joints.size());
  std::vector<Vector3<Scalar>> pos(model.joints.size());
  a[0] = -model.gravity.template cast<Scalar>();

  for (std::size_t j = 0; j < model.joints.size(); ++j) {
    const Joint& joint = model.joints[j];
    const auto p = static_cast<std::size_t>(joint.parent);
    const auto c = static_cast<std::size_t>(joint.child);
    const Scalar angle = joint.movable() ? q[joint.dof_index] : Scalar(0);
    const auto t = jointTransform<Scalar>(joint, angle);
    rot[j] = t.linear();
    pos[j] = t.translation();
    const Matrix3<Scalar> rt = rot[j].transpose();
    const Vector3<Scalar> w_in = rt * w[p];
    w[c] = w_in;
    wd[c] = rt * wd[p];
    if (joint.movable()) {
      const Vector3<Scalar> s = joint.axis.template cast<Scalar>();
      w[c] += s * qd[joint.dof_index];
      wd[c] += s * qdd[joint.dof_index] + w_in.cross(s * qd[joint.dof_index]);
    }
    a[c] = rt * (a[p] + wd[p].cross(pos[j]) + w[p].cross(w[p].cross(pos[j])));
  }

  std::vector<Vector3<Scalar>> f(nl);
  std::vector<Vector3<Scalar>> n(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    const Link& link = model.links[l];
    const Scalar m(link.mass);
    const Vector3<Scalar> com = link.center_of_mass.template cast<Scalar>();
    const Matrix3<Scalar> inertia = link.inertia.template cast<Scalar>();
    const Vector3<Scalar> a_com = a[l] + wd[l].cross(com) + w[l].cross(w[l].cross(com));
    f[l] = m * a_com;
    n[l] = inertia * wd[l] + w[l].cross(inertia * w[l]) + com.cross(f[l]);
  }

  VectorX<Scalar> tau = VectorX<Scalar>::Zero(model.dof());
  for (std::size_t k = model.joints.size(); k-- > 0;) {
    const Joint& joint = model.joints[k];
    const auto p = static_cast<std::size_t>(joint.parent);
    const auto c = static_cast<std::size_t>(joint.child);
    if (joint.movable()) tau[joint.dof_index] = joint.axis.template cast<Scalar>().dot(n[c]);
    const Vector3<Scalar> fp = rot[k] * f[c];
    f[p] += fp;
    n[p] += rot[k] * n[c] + pos[k].cross(fp);
  }
  return tau;
}

/// Joint-space inertia matrix by the composite rigid body algorithm.
template <typename Scalar>
MatrixX<Scalar> massMatrix(const KinematicModel& model, const VectorX<Scalar>& q) {
  detail::checkSize(model, q.size(), "q");
  const std::size_t nl = model.links.size();
  const std::size_t nj = model.joints.size();

  std::vector<Matrix6<Scalar>> composite(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    const Link& link = model.links[l];
    const Scalar m(link.mass);
    const Matrix3<Scalar> cx = skew<Scalar>(link.center_of_mass.template cast<Scalar>());
    Matrix6<Scalar> I;
    I.template topLeftCorner<3, 3>() = link.inertia.template cast<Scalar>() + m * cx * cx.transpose();
    I.template topRightCorner<3, 3>() = m * cx;
    I.template bottomLeftCorner<3, 3>() = m * cx.transpose();
    I.template bottomRightCorner<3, 3>() = m * Matrix3<Scalar>::Identity();
    composite[l] = I;
  }

  // X[j]: motion transform from joint j's parent link coordinates to its child.
  std::vector<Matrix6<Scalar>> X(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    const Joint& joint = model.joints[j];
    const Scalar angle = joint.movable() ? q[joint.dof_index] : Scalar(0);
    const auto t = jointTransform<Scalar>(joint, angle);
    const Matrix3<Scalar> E = t.linear().transpose();
    X[j].setZero();
    X[j].template topLeftCorner<3, 3>() = E;
    X[j].template bottomRightCorner<3, 3>() = E;
    X[j].template bottomLeftCorner<3, 3>() = -E * skew<Scalar>(t.translation());
  }

  for (std::size_t k = nj; k-- > 0;) {
    const Joint& joint = model.joints[k];
    composite[static_cast<std::size_t>(joint.parent)] +=
        X[k].transpose() * composite[static_cast<std::size_t>(joint.child)] * X[k];
  }

  std::vector<int> parent_joint(nl, -1);
  for (std::size_t j = 0; j < nj; ++j) parent_joint[static_cast<std::size_t>(model.joints[j].child)] = static_cast<int>(j);

  auto subspace = [](const Joint& joint) {
    Vector6<Scalar> s = Vector6<Scalar>::Zero();
    s.template head<3>() = joint.axis.template cast<Scalar>();
    return s;
  };

  MatrixX<Scalar> M = MatrixX<Scalar>::Zero(model.dof(), model.dof());
  for (std::size_t i = 0; i < nj; ++i) {
    const Joint& joint = model.joints[i];
    if (!joint.movable()) continue;
    const int di = joint.dof_index;
    Vector6<Scalar> F = composite[static_cast<std::size_t>(joint.child)] * subspace(joint);
    M(di, di) = subspace(joint).dot(F);
    std::size_t j = i;
    while (true) {
      F = X[j].transpose() * F;
      const int up = parent_joint[static_cast<std::size_t>(model.joints[j].parent)];
      if (up < 0) break;
      j = static_cast<std::size_t>(up);
      const Joint& ancestor = model.joints[j];
      if (!ancestor.movable()) continue;
      const int dj = ancestor.dof_index;
      M(di, dj) = subspace(ancestor).dot(F);
      M(dj, di) = M(di, dj);
    }
  }
  return M;
}

/// G(q), identical to inverseDynamics(q, 0, 0).
template <typename Scalar>
VectorX<Scalar> gravityVector(const KinematicModel& model, const VectorX<Scalar>& q) {
  const VectorX<Scalar> zero = VectorX<Scalar>::Zero(model.dof());
  return inverseDynamics<Scalar>(model, q, zero, zero);
}

/// C(q, qd) qd + G(q).
template <typename Scalar>
VectorX<Scalar> biasForces(const KinematicModel& model, const VectorX<Scalar>& q, const VectorX<Scalar>& qd) {
  return inverseDynamics<Scalar>(model, q, qd, VectorX<Scalar>::Zero(model.dof()));
}

/// Solves M x = rhs by Cholesky; a non positive definite M raises NumericalError.
template <typename Scalar>
VectorX<Scalar> solveMass(const KinematicModel& model, const MatrixX<Scalar>& M, const VectorX<Scalar>& rhs) {
  using std::abs;
  Eigen::LLT<MatrixX<Scalar>> llt(M);
  const Scalar max_diag = M.rows() > 0 ? M.diagonal().cwiseAbs().maxCoeff() : Scalar(1);
  bool ok = llt.info() == Eigen::Success;
  int bad = -1;
  if (ok) {
    const MatrixX<Scalar> L = llt.matrixL();
    for (Eigen::Index k = 0; k < L.rows(); ++k) {
      if (L(k, k) * L(k, k) <= Scalar(1e-13) * max_diag) {
        ok = false;
        bad = static_cast<int>(k);
        break;
      }
    }
  }
  if (!ok) {
    std::string which;
    if (bad >= 0) {
      const auto movable = model.movableJoints();
      which = " (pivot at joint '" + model.joints[static_cast<std::size_t>(movable[static_cast<std::size_t>(bad)])].name + "')";
    }
    throw NumericalError("mass matrix of chain " + detail::chainDescription(model) + " is not positive definite" + which);
  }
  return llt.solve(rhs);
}

/// qdd = M(q)^-1 (u - C(q, qd) qd - G(q) - B qd).
template <typename Scalar>
VectorX<Scalar> forwardDynamics(const KinematicModel& model, const VectorX<Scalar>& q, const VectorX<Scalar>& qd,
                                const VectorX<Scalar>& u) {
  detail::checkSize(model, u.size(), "u");
  const VectorX<Scalar> friction = model.viscousFriction().template cast<Scalar>().cwiseProduct(qd);
  const VectorX<Scalar> rhs = u - biasForces<Scalar>(model, q, qd) - friction;
  return solveMass<Scalar>(model, massMatrix<Scalar>(model, q), rhs);
}

/// Kinetic plus gravitational potential energy (zero potential at the base origin).
template <typename Scalar>
Scalar totalEnergy(const KinematicModel& model, const VectorX<Scalar>& q, const VectorX<Scalar>& qd) {
  const Scalar kinetic = Scalar(0.5) * qd.dot(massMatrix<Scalar>(model, q) * qd);
  const auto poses = linkPoses<Scalar>(model, q);
  Scalar potential(0);
  const Vector3<Scalar> g = model.gravity.template cast<Scalar>();
  for (std::size_t l = 0; l < model.links.size(); ++l) {
    const Vector3<Scalar> com = poses[l] * model.links[l].center_of_mass.template cast<Scalar>();
    potential -= Scalar(model.links[l].mass) * g.dot(com);
  }
  return kinetic + potential;
}

}  // namespace smomass
