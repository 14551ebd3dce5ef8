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

#include "smomass/smo.hpp"

#include <cmath>

#include "smomass/dynamics.hpp"
#include "smomass/errors.hpp"

namespace smomass {

SmoState SmoState::fromMeasurement(const Eigen::VectorXd& q_meas) {
  const auto n = q_meas.size();
  return {q_meas, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

SmoState smoStep(const SmoState& state, const Eigen::VectorXd& q_meas, const Eigen::VectorXd& u,
                 const KinematicModel& model, const SmoGains& gains, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("smoStep: dt must be > 0");
  if (!q_meas.allFinite() || !u.allFinite()) throw ObserverBlowupError("SMO received non-finite inputs");
  const auto n = q_meas.size();
  Eigen::VectorXd z1(n);
  Eigen::VectorXd z2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = q_meas[i] - state.x1_hat[i];
    const double s = signum(e);
    z1[i] = gains.lambda * std::sqrt(std::abs(e)) * s;
    z2[i] = gains.alpha * s;
  }
  const Eigen::VectorXd f = forwardDynamics<double>(model, q_meas, state.x2_hat, u);

  SmoState next;
  next.x1_hat = state.x1_hat + dt * (state.x2_hat + z1);
  next.x2_hat = state.x2_hat + dt * (f + z2);
  next.z2_last = z2;
  if (!next.x2_hat.allFinite() || next.x2_hat.cwiseAbs().maxCoeff() > 1e3)
    throw ObserverBlowupError("SMO velocity estimate diverged (|x2_hat| > 1e3)");
  return next;
}

SmoState smoSample(const SmoState& state, const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_meas,
                   const Eigen::VectorXd& u, const KinematicModel& model, const SmoGains& gains, double period,
                   int substeps) {
  if (substeps < 1) throw std::invalid_argument("smoSample: substeps must be >= 1");
  if (q_prev.size() != q_meas.size()) throw std::invalid_argument("smoSample: measurement sizes differ");
  const double h = period / substeps;
  SmoState next = state;
  Eigen::VectorXd z2_sum = Eigen::VectorXd::Zero(q_meas.size());
  for (int i = 0; i < substeps; ++i) {
    const double w = static_cast<double>(i) / substeps;
    next = smoStep(next, (1.0 - w) * q_prev + w * q_meas, u, model, gains, h);
    z2_sum += next.z2_last;
  }
  next.z2_last = z2_sum / substeps;
  return next;
}

}  // namespace smomass
