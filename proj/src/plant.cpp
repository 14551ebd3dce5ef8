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

#include "smomass/plant.hpp"

#include <cmath>
#include <limits>

#include "smomass/dynamics.hpp"
#include "smomass/errors.hpp"
#include "smomass/kinematics.hpp"

namespace smomass {

Eigen::Vector3d payloadPointInAttachFrame(const KinematicModel& model, const Payload& payload) {
  const int attach = model.linkIndex(payload.attach_frame);
  const int reference = model.linkIndex(payload.reference_frame.empty() ? payload.attach_frame : payload.reference_frame);
  if (payload.direction.norm() < 1e-12) throw ConfigError("payload direction must be nonzero");
  const auto poses = linkPoses<double>(model, Eigen::VectorXd::Zero(model.dof()));
  const auto& a = poses[static_cast<std::size_t>(attach)];
  const auto& r = poses[static_cast<std::size_t>(reference)];
  const Eigen::Vector3d in_base = r * (payload.offset * payload.direction.normalized());
  return a.rotation.transpose() * (in_base - a.translation);
}

KinematicModel attachPayload(const KinematicModel& model, const Payload& payload) {
  if (!(payload.mass >= 0.0)) throw ConfigError("payload mass must be >= 0");
  if (!(payload.offset > 0.0)) throw ConfigError("payload offset must be > 0");
  const Eigen::Vector3d p = payloadPointInAttachFrame(model, payload);
  if (payload.mass == 0.0) return model;

  KinematicModel out = model;
  Link& link = out.links[static_cast<std::size_t>(model.linkIndex(payload.attach_frame))];
  const double m1 = link.mass;
  const double m = m1 + payload.mass;
  const Eigen::Vector3d c1 = link.center_of_mass;
  const Eigen::Vector3d c = (m1 * c1 + payload.mass * p) / m;
  auto shift = [](double mass, const Eigen::Vector3d& d) -> Eigen::Matrix3d {
    return mass * (d.squaredNorm() * Eigen::Matrix3d::Identity() - d * d.transpose());
  };
  link.inertia = link.inertia + shift(m1, c1 - c) + shift(payload.mass, p - c);
  link.inertia = 0.5 * (link.inertia + link.inertia.transpose());
  link.center_of_mass = c;
  link.mass = m;
  return out;
}

double SensorModel::positionStep() const { return position_range / std::ldexp(1.0, position_bits); }

void SensorModel::validate() const {
  if (position_bits < 1 || position_bits > 32 || torque_bits < 1 || torque_bits > 32)
    throw ConfigError("sensor bit counts must lie in [1, 32]");
  if (!(position_range > 0.0)) throw ConfigError("sensor position_range must be > 0");
  if (torque_range.size() > 0 && !(torque_range.minCoeff() > 0.0))
    throw ConfigError("sensor torque_range entries must be > 0");
  if (noise_lsb < 0) throw ConfigError("sensor noise_lsb must be >= 0");
}

Eigen::VectorXd defaultTorqueRange(const KinematicModel& model) {
  Eigen::VectorXd range = Eigen::VectorXd::Constant(model.dof(), 10.0);
  for (const auto& j : model.joints)
    if (j.movable() && j.limits && j.limits->effort > 0.0) range[j.dof_index] = j.limits->effort;
  return range;
}

Eigen::VectorXd quantizePosition(const Eigen::VectorXd& q, const SensorModel& sensor) {
  const double step = sensor.positionStep();
  return q.unaryExpr([step](double v) { return std::floor(v / step + 0.5) * step; });
}

Eigen::VectorXd quantizeTorque(const Eigen::VectorXd& u, const SensorModel& sensor) {
  if (sensor.torque_range.size() != u.size())
    throw std::invalid_argument("quantizeTorque: torque_range has wrong length");
  const double half_levels = std::ldexp(1.0, sensor.torque_bits - 1);
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double range = sensor.torque_range[i];
    const double step = range / half_levels;
    const double clamped = std::clamp(u[i], -range, range);
    const double k = std::clamp(std::floor(clamped / step + 0.5), -half_levels, half_levels);
    out[i] = k * step;
  }
  return out;
}

Eigen::VectorXd measure(const Eigen::VectorXd& q, const SensorModel& sensor, std::mt19937_64& rng) {
  Eigen::VectorXd out = quantizePosition(q, sensor);
  if (sensor.noise_lsb == 0) return out;
  const double step = sensor.positionStep();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (sensor.noise == NoiseDistribution::Uniform) {
      const auto span = static_cast<std::uint64_t>(2 * sensor.noise_lsb + 1);
      const auto k = static_cast<long>(rng() % span) - sensor.noise_lsb;
      out[i] += static_cast<double>(k) * step;
    } else {
      // Box-Muller on the raw engine output keeps the stream platform independent.
      constexpr double kScale = 1.0 / 18446744073709551616.0;
      const double u1 = (static_cast<double>(rng()) + 1.0) * kScale;
      const double u2 = static_cast<double>(rng()) * kScale;
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
      out[i] += z * 0.5 * sensor.noise_lsb * step;
    }
  }
  return out;
}

void PlantConfig::validate() const {
  if (!(sample_period > 0.0)) throw ConfigError("sample_period must be > 0");
  if (integrator_substeps < 1) throw ConfigError("integrator_substeps must be >= 1");
  sensor.validate();
  if (sensor.torque_range.size() != 0 && sensor.torque_range.size() != model.dof())
    throw ConfigError("sensor torque_range length does not match model dof");
}

RobotState integrate(const KinematicModel& model, const RobotState& state, const Eigen::VectorXd& u, double period,
                     int substeps) {
  if (!state.q.allFinite() || !state.qd.allFinite() || !u.allFinite())
    throw InstabilityError("plant received a non-finite state or torque");
  const double h = period / substeps;
  RobotState s = state;
  auto accel = [&](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return forwardDynamics<double>(model, q, qd, u);
  };
  for (int k = 0; k < substeps; ++k) {
    const Eigen::VectorXd k1q = s.qd;
    const Eigen::VectorXd k1v = accel(s.q, s.qd);
    const Eigen::VectorXd k2q = s.qd + 0.5 * h * k1v;
    const Eigen::VectorXd k2v = accel(s.q + 0.5 * h * k1q, k2q);
    const Eigen::VectorXd k3q = s.qd + 0.5 * h * k2v;
    const Eigen::VectorXd k3v = accel(s.q + 0.5 * h * k2q, k3q);
    const Eigen::VectorXd k4q = s.qd + h * k3v;
    const Eigen::VectorXd k4v = accel(s.q + h * k3q, k4q);
    s.q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    s.qd += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

    for (const Joint& joint : model.joints) {
      if (!joint.movable() || !joint.limits || !joint.limits->has_position) continue;
      const int i = joint.dof_index;
      if (s.q[i] < joint.limits->lower) {
        s.q[i] = joint.limits->lower;
        s.qd[i] = 0.0;
      } else if (s.q[i] > joint.limits->upper) {
        s.q[i] = joint.limits->upper;
        s.qd[i] = 0.0;
      }
    }
    if (!s.qd.allFinite() || s.qd.cwiseAbs().maxCoeff() > 1e3)
      throw InstabilityError("plant state diverged (|qd| > 1e3 rad/s)");
  }
  return s;
}

RobotState stepPlant(const RobotState& state, const Eigen::VectorXd& u, const PlantConfig& config) {
  config.validate();
  const KinematicModel augmented = config.payload ? attachPayload(config.model, *config.payload) : config.model;
  return integrate(augmented, state, u, config.sample_period, config.integrator_substeps);
}

Plant::Plant(PlantConfig config, RobotState initial)
    : config_(std::move(config)),
      augmented_(config_.payload ? attachPayload(config_.model, *config_.payload) : config_.model),
      state_(std::move(initial)),
      rng_(config_.sensor.rng_seed) {
  config_.validate();
  if (config_.sensor.torque_range.size() == 0) config_.sensor.torque_range = defaultTorqueRange(config_.model);
  if (state_.q.size() != config_.model.dof() || state_.qd.size() != config_.model.dof())
    throw std::invalid_argument("Plant: initial state has wrong length");
}

Eigen::VectorXd Plant::measure() { return smomass::measure(state_.q, config_.sensor, rng_); }

void Plant::step(const Eigen::VectorXd& u) {
  try {
    state_ = integrate(augmented_, state_, u, config_.sample_period, config_.integrator_substeps);
  } catch (const InstabilityError& e) {
    throw InstabilityError(std::string(e.what()) + " at t=" + std::to_string(time_));
  }
  ++steps_;
  time_ = static_cast<double>(steps_) * config_.sample_period;
}

}  // namespace smomass
