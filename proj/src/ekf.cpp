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

#include "smomass/ekf.hpp"

#include "smomass/dynamics.hpp"
#include "smomass/errors.hpp"

namespace smomass {

EkfState EkfState::initial(const Eigen::VectorXd& q0, double q_scale, double r_scale, double p0_scale) {
  const auto n = q0.size();
  EkfState s;
  s.x1_hat = q0;
  s.x2_hat = Eigen::VectorXd::Zero(n);
  s.P = p0_scale * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  s.Q = q_scale * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  s.R = r_scale * Eigen::MatrixXd::Identity(n, n);
  return s;
}

Eigen::MatrixXd measurementJacobian(Eigen::Index dof) {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dof, 2 * dof);
  H.leftCols(dof).setIdentity();
  return H;
}

Eigen::MatrixXd kalmanGain(const EkfState& state) {
  const Eigen::MatrixXd H = measurementJacobian(state.x1_hat.size());
  // K = P H^T R^-1, computed as (R^-1 H P)^T with R symmetric.
  return state.R.llt().solve(H * state.P).transpose();
}

Eigen::MatrixXd stateJacobian(const KinematicModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& qd,
                              const Eigen::VectorXd& u, double step) {
  const auto n = q.size();
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  F.topRightCorner(n, n).setIdentity();
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    Eigen::VectorXd qp = q, qm = q, vp = qd, vm = qd;
    if (k < n) {
      qp[k] += step;
      qm[k] -= step;
    } else {
      vp[k - n] += step;
      vm[k - n] -= step;
    }
    F.block(n, k, n, 1) =
        (forwardDynamics<double>(model, qp, vp, u) - forwardDynamics<double>(model, qm, vm, u)) / (2.0 * step);
  }
  return F;
}

EkfState ekfStep(const EkfState& state, const Eigen::VectorXd& q_meas, const Eigen::VectorXd& u,
                 const KinematicModel& model, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ekfStep: dt must be > 0");
  if (!state.P.allFinite()) throw CovarianceError("EKF covariance is not finite");
  const auto n = state.x1_hat.size();

  const Eigen::VectorXd y = q_meas - state.x1_hat;
  const Eigen::MatrixXd K = kalmanGain(state);
  const Eigen::VectorXd correction = K * y;
  const Eigen::VectorXd f = forwardDynamics<double>(model, state.x1_hat, state.x2_hat, u);
  const Eigen::MatrixXd F = stateJacobian(model, state.x1_hat, state.x2_hat, u);

  EkfState next = state;
  next.x1_hat = state.x1_hat + dt * (state.x2_hat + correction.head(n));
  next.x2_hat = state.x2_hat + dt * (f + correction.tail(n));
  const Eigen::MatrixXd Pdot = F * state.P + state.P * F.transpose() - K * state.R * K.transpose() + state.Q;
  next.P = state.P + dt * Pdot;
  next.P = 0.5 * (next.P + next.P.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(next.P, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, next.P.cwiseAbs().maxCoeff());
  if (!next.P.allFinite() || es.eigenvalues().minCoeff() < -1e-9 * scale)
    throw CovarianceError("EKF covariance lost positive semidefiniteness (min eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
  if (!next.x2_hat.allFinite()) throw CovarianceError("EKF state is not finite");
  return next;
}

}  // namespace smomass
