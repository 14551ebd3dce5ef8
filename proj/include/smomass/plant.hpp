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

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "smomass/model.hpp"
#include "smomass/types.hpp"

namespace smomass {

/// Grasped object modeled as a point mass rigidly attached to a link.
struct Payload {
  double mass = 0.0;
  /// Distance from the reference joint frame to the object's center of mass
  /// along `direction`.
  double offset = 0.21;
  /// Link the object moves with (usually the gripper).
  std::string attach_frame;
  /// Frame the offset is measured from (the estimation joint's child link).
  /// Empty means attach_frame.
  std::string reference_frame;
  /// End-effector axis in reference_frame coordinates.
  Eigen::Vector3d direction{0.0, 0.0, -1.0};
};

/// Copy of `model` whose attach link also carries the payload point mass.
/// A zero-mass payload returns the model unchanged.
KinematicModel attachPayload(const KinematicModel& model, const Payload& payload);

/// Payload center of mass in attach_frame coordinates.
Eigen::Vector3d payloadPointInAttachFrame(const KinematicModel& model, const Payload& payload);

enum class NoiseDistribution { Uniform, Gaussian };

struct SensorModel {
  int position_bits = 12;
  double position_range = 2.0 * 3.14159265358979323846;
  int torque_bits = 10;
  /// Per-joint symmetric torque range; empty means defaultTorqueRange(model).
  Eigen::VectorXd torque_range;
  int noise_lsb = 2;
  /// Uniform draws an integer count of steps in [-noise_lsb, noise_lsb];
  /// Gaussian uses a standard deviation of noise_lsb/2 steps.
  NoiseDistribution noise = NoiseDistribution::Uniform;
  std::uint64_t rng_seed = 1;

  double positionStep() const;
  void validate() const;
};

/// Effort limits from the URDF, 10 N m where a joint has none.
Eigen::VectorXd defaultTorqueRange(const KinematicModel& model);

/// Rounds to the nearest multiple of position_range / 2^position_bits (ties up).
Eigen::VectorXd quantizePosition(const Eigen::VectorXd& q, const SensorModel& sensor);

/// Clamps to +/- torque_range, then rounds onto the symmetric grid with step
/// 2 range / 2^torque_bits (ties up).
Eigen::VectorXd quantizeTorque(const Eigen::VectorXd& u, const SensorModel& sensor);

/// quantizePosition(q) plus noise counted in position steps.
Eigen::VectorXd measure(const Eigen::VectorXd& q, const SensorModel& sensor, std::mt19937_64& rng);

struct PlantConfig {
  KinematicModel model;
  std::optional<Payload> payload;
  SensorModel sensor;
  double sample_period = 0.004;
  int integrator_substeps = 4;

  void validate() const;
};

/// Advances `model` by `period` with RK4 under a zero-order-hold torque,
/// then applies joint position limits. Throws InstabilityError when any
/// joint speed exceeds 1e3 rad/s.
RobotState integrate(const KinematicModel& model, const RobotState& state, const Eigen::VectorXd& u, double period,
                     int substeps);

/// One sample period of the payload-augmented dynamics.
RobotState stepPlant(const RobotState& state, const Eigen::VectorXd& u, const PlantConfig& config);

/// The simulated arm: augmented model, continuous state, measurement RNG.
class Plant {
 public:
  Plant(PlantConfig config, RobotState initial);

  const RobotState& state() const { return state_; }
  double time() const { return time_; }
  const KinematicModel& model() const { return augmented_; }
  const PlantConfig& config() const { return config_; }

  /// Quantized, noisy joint positions of the current state.
  Eigen::VectorXd measure();
  void step(const Eigen::VectorXd& u);

 private:
  PlantConfig config_;
  KinematicModel augmented_;
  RobotState state_;
  std::mt19937_64 rng_;
  double time_ = 0.0;
  long steps_ = 0;
};

}  // namespace smomass
