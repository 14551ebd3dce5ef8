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
#include <utility>
#include <vector>

#include "smomass/bus.hpp"
#include "smomass/scenario.hpp"

namespace smomass {

struct RunSummary {
  std::string scenario;
  std::string scenario_hash;
  std::uint64_t seed = 0;
  double duration = 0.0;
  long samples = 0;
  std::string estimation_joint;
  std::string pitch_frame;
  /// Mean of the smoothed estimate over the final window.
  double mass_final = 0.0;
  /// Mean of the raw estimate over the final window.
  double mass_final_raw = 0.0;
  double true_mass = 0.0;
  /// First time after which the smoothed estimate stays within
  /// max(10 %, 0.01 kg) of mass_final; -1 if never.
  double settling_time = -1.0;
  /// RMS over the run of |q - q_d| (true positions).
  double tracking_rms = 0.0;
  double gated_fraction = 0.0;
  double theta_final = 0.0;
  double final_speed = 0.0;
  double final_position_error = 0.0;
  /// max |q - x1_hat| over the final window.
  double smo_tracking_error = 0.0;
};

struct RunResult {
  RunSummary summary;
  TopicBus bus;
};

/// Topics written by runScenario(); each payload's columns are listed in the README.
namespace topics {
inline constexpr const char* kMeasuredQ = "measured_q";
inline constexpr const char* kTrueState = "true_state";
inline constexpr const char* kTrajectoryRef = "trajectory_ref";
inline constexpr const char* kTorqueCmd = "torque_cmd";
inline constexpr const char* kSmoState = "smo_state";
inline constexpr const char* kEkfState = "ekf_state";
inline constexpr const char* kZ2Eq = "z2_eq";
inline constexpr const char* kDisturbanceTorque = "disturbance_torque";
inline constexpr const char* kMassEstimate = "mass_estimate";
}  // namespace topics

/// Closed-loop (or constant-torque) run: plant -> measure -> {SMO, EKF} ->
/// filter -> estimator, controller -> plant, once per sample.
RunResult runScenario(const ScenarioConfig& config);

/// (scale, mass_final) with the observer/controller model scaled.
std::vector<std::pair<double, double>> runParameterSensitivity(const ScenarioConfig& config,
                                                               const std::vector<double>& scales);

/// (true offset, mass_final) with the plant payload moved and l4 unchanged.
std::vector<std::pair<double, double>> runL4Sensitivity(const ScenarioConfig& config,
                                                        const std::vector<double>& true_offsets);

/// Constant holding torque, automatic joint selection.
RunResult runKatanaReplication(ScenarioConfig config);

/// One CSV per topic (t,v1..vn) plus summary.json.
void exportLogs(const RunResult& run, const std::string& directory);

std::string summaryToJson(const RunSummary& summary);

}  // namespace smomass
