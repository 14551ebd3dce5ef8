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

#include "smomass/harness.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "smomass/control.hpp"
#include "smomass/dynamics.hpp"
#include "smomass/ekf.hpp"
#include "smomass/errors.hpp"
#include "smomass/filter.hpp"
#include "smomass/kinematics.hpp"
#include "smomass/plant.hpp"
#include "smomass/smo.hpp"
#include "smomass/trajectory.hpp"

namespace smomass {

namespace {

struct Segment {
  double start = 0.0;
  TrajectoryPlan plan;
};

class Reference {
 public:
  Reference(const Eigen::VectorXd& initial, const std::vector<PoseTarget>& poses) : initial_(initial) {
    double t = 0.0;
    Eigen::VectorXd from = initial;
    for (const auto& pose : poses) {
      if (pose.q.size() != initial.size())
        throw ConfigError("pose '" + pose.name + "' has " + std::to_string(pose.q.size()) + " joints, model has " +
                          std::to_string(initial.size()));
      segments_.push_back({t, planQuintic(from, pose.q, pose.move_time)});
      t += pose.move_time + pose.hold_time;
      from = pose.q;
    }
  }

  TrajectorySample at(double t) const {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(initial_.size());
    const Segment* active = nullptr;
    for (const auto& s : segments_)
      if (s.start <= t) active = &s;
    if (!active) return {initial_, zero, zero};
    return sampleTrajectory(active->plan, t - active->start);
  }

  Eigen::VectorXd finalPose() const { return segments_.empty() ? initial_ : segments_.back().plan.q_goal; }

 private:
  Eigen::VectorXd initial_;
  std::vector<Segment> segments_;
};

Eigen::VectorXd concat(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() + b.size());
  out << a, b;
  return out;
}

std::string formatNumber(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

RunResult runScenario(const ScenarioConfig& config) {
  config.validate();
  const KinematicModel nominal = loadScenarioModel(config);
  const int n = nominal.dof();
  if (config.initial_q.size() != n)
    throw ConfigError("initial_q has " + std::to_string(config.initial_q.size()) + " entries, model dof is " +
                      std::to_string(n));

  const KinematicModel observer_model =
      config.observer.model_scale == 1.0 ? nominal : scaleInertial(nominal, config.observer.model_scale);
  const double dt = 1.0 / config.sample_hz;

  PlantConfig plant_config;
  plant_config.model = nominal;
  plant_config.payload = config.payload;
  plant_config.sensor = config.sensor;
  plant_config.sensor.rng_seed = config.rng_seed;
  if (plant_config.sensor.torque_range.size() == 0) plant_config.sensor.torque_range = defaultTorqueRange(nominal);
  plant_config.sample_period = dt;
  plant_config.integrator_substeps = config.integrator_substeps;
  Plant plant(plant_config, RobotState(config.initial_q, Eigen::VectorXd::Zero(n)));

  const Reference reference(config.initial_q, config.mode == ControlMode::PdGravity ? config.poses
                                                                                      : std::vector<PoseTarget>{});

  EstimationConfig est = config.estimation.config;
  EstimationJoint selected;
  if (config.estimation.joint == "auto") {
    selected = selectEstimationJoint(observer_model, config.initial_q, config.estimation.selection_tolerance);
  } else {
    const auto j = nominal.findJoint(config.estimation.joint);
    if (!j || !nominal.joints[static_cast<std::size_t>(*j)].movable())
      throw ConfigError("estimation joint '" + config.estimation.joint + "' is not a movable joint of the model");
    const Joint& joint = nominal.joints[static_cast<std::size_t>(*j)];
    selected = {joint.dof_index, *j, joint.name, nominal.links[static_cast<std::size_t>(joint.child)].name};
  }
  est.estimation_joint = selected.dof_index;
  est.pitch_frame = selected.pitch_frame;

  Eigen::VectorXd constant_torque;
  if (config.mode == ControlMode::ConstantTorque) constant_torque = gravityVector<double>(plant.model(), config.initial_q);

  RunResult result;
  TopicBus& bus = result.bus;
  RunSummary& summary = result.summary;
  summary.scenario = config.name;
  summary.scenario_hash = scenarioHash(config);
  summary.seed = config.rng_seed;
  summary.duration = config.duration;
  summary.estimation_joint = selected.joint_name;
  summary.pitch_frame = selected.pitch_frame;
  summary.true_mass = config.payload ? config.payload->mass : 0.0;

  const long samples = std::lround(config.duration * config.sample_hz);
  const auto smoothing = static_cast<std::size_t>(std::max(1L, std::lround(config.estimation.smoothing_window_s * config.sample_hz)));
  const long final_window = std::min(samples, std::max(1L, std::lround(config.estimation.final_window_s * config.sample_hz)));
  summary.samples = samples;

  SmoState smo;
  EkfState ekf;
  FilterState filter =
      designButterworth<double>(config.observer.filter_cutoff_hz, config.sample_hz, config.observer.filter_order, n);
  MovingAverage smoother(smoothing);

  std::vector<double> smoothed_history;
  smoothed_history.reserve(static_cast<std::size_t>(samples));
  double raw_sum = 0.0;
  double smoothed_sum = 0.0;
  double tracking_sq = 0.0;
  long gated = 0;
  double smo_err = 0.0;
  Eigen::VectorXd y_prev;
  Eigen::VectorXd u_prev;
  std::string stage = "setup";
  double t = 0.0;

  try {
    for (long k = 0; k < samples; ++k) {
      t = static_cast<double>(k) * dt;
      stage = "plant";
      const Eigen::VectorXd y = plant.measure();
      const RobotState truth = plant.state();
      bus.publish(topics::kMeasuredQ, t, y);
      bus.publish(topics::kTrueState, t, concat(truth.q, truth.qd));
      if (k == 0) {
        smo = SmoState::fromMeasurement(y);
        ekf = EkfState::initial(y, config.observer.q_scale, config.observer.r_scale, config.observer.p0_scale);
      }

      stage = "control";
      const TrajectorySample ref = reference.at(t);
      bus.publish(topics::kTrajectoryRef, t, concat(ref.q, ref.qd));
      const Eigen::VectorXd u_raw = config.mode == ControlMode::PdGravity
                                        ? pdGravityTorque(ekf.x1_hat, ekf.x2_hat, ref.q, ref.qd, observer_model, config.gains)
                                        : constant_torque;
      const Eigen::VectorXd u = quantizeTorque(u_raw, plant.config().sensor);
      bus.publish(topics::kTorqueCmd, t, u);

      // Both observers now hold estimates for time t: the EKF predicted it on
      // the previous tick, the SMO catches up over the period just elapsed.
      stage = "smo";
      if (k > 0)
        smo = smoSample(smo, y_prev, y, u_prev, observer_model, config.observer.smo, dt,
                        config.observer.smo_substeps);
      bus.publish(topics::kEkfState, t, concat(ekf.x1_hat, ekf.x2_hat));
      bus.publish(topics::kSmoState, t, concat(smo.x1_hat, smo.x2_hat));
      const Eigen::VectorXd z2_eq = equivalentInjection(filter, smo.z2_last);
      bus.publish(topics::kZ2Eq, t, z2_eq);

      stage = "estimation";
      const MassEstimate m = gatedMassEstimate(y, ekf.x2_hat, z2_eq, observer_model, est, t);
      bus.publish(topics::kDisturbanceTorque, t, disturbanceTorque(observer_model, y, z2_eq));
      const double smoothed = smoother.push(m.mass);
      Eigen::VectorXd record(5);
      record << m.mass, smoothed, m.tau, m.theta, m.gated ? 1.0 : 0.0;
      bus.publish(topics::kMassEstimate, t, record);

      stage = "ekf";
      ekf = ekfStep(ekf, y, u, observer_model, dt);

      stage = "plant";
      plant.step(u);
      y_prev = y;
      u_prev = u;

      smoothed_history.push_back(smoothed);
      tracking_sq += (truth.q - ref.q).squaredNorm();
      gated += m.gated ? 1 : 0;
      if (k >= samples - final_window) {
        raw_sum += m.mass;
        smoothed_sum += smoothed;
        smo_err = std::max(smo_err, (truth.q - smo.x1_hat).cwiseAbs().maxCoeff());
        summary.theta_final = m.theta;
      }
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(config.name, stage, t, e.what());
  }

  summary.mass_final = smoothed_sum / static_cast<double>(final_window);
  summary.mass_final_raw = raw_sum / static_cast<double>(final_window);
  summary.tracking_rms = std::sqrt(tracking_sq / static_cast<double>(std::max(1L, samples)));
  summary.gated_fraction = static_cast<double>(gated) / static_cast<double>(std::max(1L, samples));
  summary.final_speed = plant.state().qd.norm();
  summary.final_position_error = (plant.state().q - reference.finalPose()).norm();
  summary.smo_tracking_error = smo_err;
  const double band = std::max(0.1 * std::abs(summary.mass_final), 0.01);
  long settle = -1;
  for (long k = samples - 1; k >= 0; --k) {
    if (std::abs(smoothed_history[static_cast<std::size_t>(k)] - summary.mass_final) > band) break;
    settle = k;
  }
  summary.settling_time = settle >= 0 ? static_cast<double>(settle) * dt : -1.0;
  return result;
}

std::vector<std::pair<double, double>> runParameterSensitivity(const ScenarioConfig& config,
                                                               const std::vector<double>& scales) {
  std::vector<std::pair<double, double>> out;
  for (double s : scales) {
    ScenarioConfig c = config;
    c.observer.model_scale = s;
    c.name = config.name + "_scale_" + formatNumber(s);
    out.emplace_back(s, runScenario(c).summary.mass_final);
  }
  return out;
}

std::vector<std::pair<double, double>> runL4Sensitivity(const ScenarioConfig& config,
                                                        const std::vector<double>& true_offsets) {
  if (!config.payload) throw ConfigError("l4 sensitivity needs a payload in the scenario");
  std::vector<std::pair<double, double>> out;
  for (double offset : true_offsets) {
    ScenarioConfig c = config;
    c.payload->offset = offset;
    c.name = config.name + "_offset_" + formatNumber(offset);
    out.emplace_back(offset, runScenario(c).summary.mass_final);
  }
  return out;
}

RunResult runKatanaReplication(ScenarioConfig config) {
  config.mode = ControlMode::ConstantTorque;
  config.estimation.joint = "auto";
  return runScenario(config);
}

std::string summaryToJson(const RunSummary& s) {
  nlohmann::json j;
  j["scenario"] = s.scenario;
  j["scenario_hash"] = s.scenario_hash;
  j["seed"] = s.seed;
  j["duration_s"] = s.duration;
  j["samples"] = s.samples;
  j["estimation_joint"] = s.estimation_joint;
  j["pitch_frame"] = s.pitch_frame;
  j["mass_final_kg"] = s.mass_final;
  j["mass_final_raw_kg"] = s.mass_final_raw;
  j["true_mass_kg"] = s.true_mass;
  j["settling_time_s"] = s.settling_time;
  j["tracking_rms_rad"] = s.tracking_rms;
  j["gated_fraction"] = s.gated_fraction;
  j["theta_final_rad"] = s.theta_final;
  j["final_speed_rad_s"] = s.final_speed;
  j["final_position_error_rad"] = s.final_position_error;
  j["smo_tracking_error_rad"] = s.smo_tracking_error;
  return j.dump(2) + "\n";
}

void exportLogs(const RunResult& run, const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& topic : run.bus.topics()) {
    const auto& records = run.bus.records(topic);
    std::ofstream out(std::filesystem::path(directory) / (topic + ".csv"), std::ios::binary);
    if (!out) throw Error("cannot write log for topic '" + topic + "' in '" + directory + "'");
    const Eigen::Index width = records.empty() ? 0 : records.front().payload.size();
    std::string line = "t";
    for (Eigen::Index i = 1; i <= width; ++i) line += ",v" + std::to_string(i);
    out << line << '\n';
    for (const auto& r : records) {
      line = formatNumber(r.timestamp);
      for (Eigen::Index i = 0; i < r.payload.size(); ++i) line += "," + formatNumber(r.payload[i]);
      out << line << '\n';
    }
  }
  std::ofstream summary(std::filesystem::path(directory) / "summary.json", std::ios::binary);
  if (!summary) throw Error("cannot write summary.json in '" + directory + "'");
  summary << summaryToJson(run.summary);
}

}  // namespace smomass
