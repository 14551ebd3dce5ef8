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
#include <string>
#include <vector>

#include "smomass/control.hpp"
#include "smomass/estimation.hpp"
#include "smomass/plant.hpp"
#include "smomass/smo.hpp"

namespace smomass {

enum class ControlMode { PdGravity, ConstantTorque };

struct PoseTarget {
  std::string name;
  Eigen::VectorXd q;
  double move_time = 4.0;
  double hold_time = 16.0;
};

struct ObserverSettings {
  SmoGains smo;
  int smo_substeps = 32;
  double q_scale = 0.003;
  double r_scale = 0.001;
  double p0_scale = 0.003;
  double filter_cutoff_hz = 1.0;
  int filter_order = 4;
  /// Multiplies link masses and inertias on the observer/controller side.
  double model_scale = 1.0;
};

struct EstimationSettings {
  EstimationConfig config;
  /// Joint name, or "auto" to pick with selectEstimationJoint().
  std::string joint = "auto";
  double selection_tolerance = 0.17;
  double smoothing_window_s = 1.0;
  double final_window_s = 2.0;
};

/// Complete description of one experiment.
struct ScenarioConfig {
  std::string name = "scenario";
  std::string urdf_path;
  std::optional<std::pair<std::string, std::string>> chain;  ///< (base, tip)
  std::optional<Eigen::Vector3d> gravity;
  std::optional<Payload> payload;
  ObserverSettings observer;
  ControlMode mode = ControlMode::PdGravity;
  ControlGains gains;
  EstimationSettings estimation;
  SensorModel sensor;
  double sample_hz = 250.0;
  double duration = 20.0;
  int integrator_substeps = 4;
  Eigen::VectorXd initial_q;
  std::vector<PoseTarget> poses;
  std::uint64_t rng_seed = 42;

  void validate() const;
};

/// Reads a JSON scenario file; relative paths resolve against its directory.
ScenarioConfig loadScenarioConfig(const std::string& path);
ScenarioConfig parseScenarioConfig(const std::string& json_text, const std::string& base_dir = ".");
/// Canonical JSON (sorted keys, shortest round-trip numbers).
std::string scenarioToJson(const ScenarioConfig& config);
/// FNV-1a 64 of scenarioToJson(), as 16 hex digits.
std::string scenarioHash(const ScenarioConfig& config);

/// Model as loaded from urdf_path/chain with the gravity override applied.
KinematicModel loadScenarioModel(const ScenarioConfig& config);

}  // namespace smomass
