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

#include "smomass/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smomass/errors.hpp"
#include "smomass/urdf.hpp"

namespace smomass {

using nlohmann::json;

namespace {

Eigen::VectorXd toVector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(what + " must be an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json fromVector(const Eigen::VectorXd& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end() && !it->is_null()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

void ScenarioConfig::validate() const {
  if (urdf_path.empty()) throw ConfigError("scenario '" + name + "' has no urdf path");
  if (!(sample_hz > 0.0)) throw ConfigError("sample_hz must be > 0");
  if (!(duration > 0.0)) throw ConfigError("duration must be > 0");
  if (!(observer.model_scale > 0.0)) throw ConfigError("observer model_scale must be > 0");
  if (!(observer.smo.lambda > 0.0) || !(observer.smo.alpha > 0.0)) throw ConfigError("SMO gains must be > 0");
  if (observer.smo_substeps < 1) throw ConfigError("observer smo_substeps must be >= 1");
  if (!(observer.q_scale > 0.0) || !(observer.r_scale > 0.0) || !(observer.p0_scale >= 0.0))
    throw ConfigError("EKF covariance scales must be positive");
  if (gains.kp < 0.0 || gains.kd < 0.0) throw ConfigError("control gains must be >= 0");
  if (integrator_substeps < 1) throw ConfigError("integrator_substeps must be >= 1");
  if (!(estimation.smoothing_window_s > 0.0) || !(estimation.final_window_s > 0.0))
    throw ConfigError("estimation windows must be > 0");
  estimation.config.validate();
  sensor.validate();
  for (const auto& p : poses) {
    if (!(p.move_time > 0.0) || p.hold_time < 0.0) throw ConfigError("pose '" + p.name + "' has invalid timing");
  }
}

ScenarioConfig parseScenarioConfig(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("scenario config must be a JSON object");

  ScenarioConfig c;
  read(root, "name", c.name);
  std::string urdf;
  read(root, "urdf", urdf);
  if (urdf.empty()) throw ConfigError("scenario config needs a 'urdf' path");
  c.urdf_path = resolve(base_dir, urdf);
  if (auto it = root.find("chain"); it != root.end() && !it->is_null()) {
    std::string base, tip;
    read(*it, "base", base);
    read(*it, "tip", tip);
    if (base.empty() || tip.empty()) throw ConfigError("chain needs 'base' and 'tip'");
    c.chain = std::make_pair(base, tip);
  }
  if (auto it = root.find("gravity"); it != root.end() && !it->is_null()) {
    const Eigen::VectorXd g = toVector(*it, "gravity");
    if (g.size() != 3) throw ConfigError("gravity must have three components");
    c.gravity = Eigen::Vector3d(g[0], g[1], g[2]);
  }
  if (auto it = root.find("payload"); it != root.end() && !it->is_null()) {
    Payload p;
    read(*it, "mass", p.mass);
    read(*it, "offset", p.offset);
    read(*it, "attach_frame", p.attach_frame);
    read(*it, "reference_frame", p.reference_frame);
    if (auto d = it->find("direction"); d != it->end()) {
      const Eigen::VectorXd v = toVector(*d, "payload direction");
      if (v.size() != 3) throw ConfigError("payload direction must have three components");
      p.direction = Eigen::Vector3d(v[0], v[1], v[2]);
    }
    if (p.attach_frame.empty()) throw ConfigError("payload needs an 'attach_frame'");
    c.payload = p;
  }
  if (auto it = root.find("observer"); it != root.end()) {
    read(*it, "lambda", c.observer.smo.lambda);
    read(*it, "alpha", c.observer.smo.alpha);
    read(*it, "smo_substeps", c.observer.smo_substeps);
    read(*it, "q_scale", c.observer.q_scale);
    read(*it, "r_scale", c.observer.r_scale);
    read(*it, "p0_scale", c.observer.p0_scale);
    read(*it, "filter_cutoff_hz", c.observer.filter_cutoff_hz);
    read(*it, "filter_order", c.observer.filter_order);
    read(*it, "model_scale", c.observer.model_scale);
  }
  if (auto it = root.find("control"); it != root.end()) {
    std::string mode = "pd_gravity";
    read(*it, "mode", mode);
    if (mode == "pd_gravity") {
      c.mode = ControlMode::PdGravity;
    } else if (mode == "constant_torque") {
      c.mode = ControlMode::ConstantTorque;
    } else {
      throw ConfigError("control mode must be 'pd_gravity' or 'constant_torque'");
    }
    read(*it, "kp", c.gains.kp);
    read(*it, "kd", c.gains.kd);
  }
  if (auto it = root.find("estimation"); it != root.end()) {
    read(*it, "l4", c.estimation.config.l4);
    read(*it, "theta_threshold", c.estimation.config.theta_threshold);
    read(*it, "speed_gate", c.estimation.config.speed_gate);
    read(*it, "g", c.estimation.config.g);
    read(*it, "joint", c.estimation.joint);
    read(*it, "selection_tolerance", c.estimation.selection_tolerance);
    read(*it, "smoothing_window_s", c.estimation.smoothing_window_s);
    read(*it, "final_window_s", c.estimation.final_window_s);
  }
  if (auto it = root.find("sensor"); it != root.end()) {
    read(*it, "position_bits", c.sensor.position_bits);
    read(*it, "position_range", c.sensor.position_range);
    read(*it, "torque_bits", c.sensor.torque_bits);
    read(*it, "noise_lsb", c.sensor.noise_lsb);
    if (auto r = it->find("torque_range"); r != it->end() && !r->is_null())
      c.sensor.torque_range = toVector(*r, "sensor torque_range");
    std::string noise = "uniform";
    read(*it, "noise", noise);
    if (noise == "uniform") {
      c.sensor.noise = NoiseDistribution::Uniform;
    } else if (noise == "gaussian") {
      c.sensor.noise = NoiseDistribution::Gaussian;
    } else {
      throw ConfigError("sensor noise must be 'uniform' or 'gaussian'");
    }
  }
  if (auto it = root.find("timing"); it != root.end()) {
    read(*it, "sample_hz", c.sample_hz);
    read(*it, "duration", c.duration);
    read(*it, "integrator_substeps", c.integrator_substeps);
  }
  if (auto it = root.find("initial_q"); it != root.end()) c.initial_q = toVector(*it, "initial_q");
  if (auto it = root.find("poses"); it != root.end()) {
    if (!it->is_array()) throw ConfigError("poses must be an array");
    for (const auto& p : *it) {
      PoseTarget target;
      read(p, "name", target.name);
      if (auto q = p.find("q"); q != p.end()) target.q = toVector(*q, "pose q");
      read(p, "move_time", target.move_time);
      read(p, "hold_time", target.hold_time);
      c.poses.push_back(std::move(target));
    }
  }
  read(root, "rng_seed", c.rng_seed);
  c.sensor.rng_seed = c.rng_seed;
  c.validate();
  return c;
}

ScenarioConfig loadScenarioConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parseScenarioConfig(ss.str(), dir.empty() ? "." : dir.string());
}

std::string scenarioToJson(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["urdf"] = c.urdf_path;
  if (c.chain) j["chain"] = {{"base", c.chain->first}, {"tip", c.chain->second}};
  if (c.gravity) j["gravity"] = {c.gravity->x(), c.gravity->y(), c.gravity->z()};
  if (c.payload) {
    j["payload"] = {{"mass", c.payload->mass},
                    {"offset", c.payload->offset},
                    {"attach_frame", c.payload->attach_frame},
                    {"reference_frame", c.payload->reference_frame},
                    {"direction", {c.payload->direction.x(), c.payload->direction.y(), c.payload->direction.z()}}};
  } else {
    j["payload"] = nullptr;
  }
  j["observer"] = {{"lambda", c.observer.smo.lambda},       {"alpha", c.observer.smo.alpha},
                   {"q_scale", c.observer.q_scale},          {"r_scale", c.observer.r_scale},
                   {"p0_scale", c.observer.p0_scale},        {"filter_cutoff_hz", c.observer.filter_cutoff_hz},
                   {"filter_order", c.observer.filter_order}, {"model_scale", c.observer.model_scale},
                   {"smo_substeps", c.observer.smo_substeps}};
  j["control"] = {{"mode", c.mode == ControlMode::PdGravity ? "pd_gravity" : "constant_torque"},
                  {"kp", c.gains.kp},
                  {"kd", c.gains.kd}};
  j["estimation"] = {{"l4", c.estimation.config.l4},
                     {"theta_threshold", c.estimation.config.theta_threshold},
                     {"speed_gate", c.estimation.config.speed_gate},
                     {"g", c.estimation.config.g},
                     {"joint", c.estimation.joint},
                     {"selection_tolerance", c.estimation.selection_tolerance},
                     {"smoothing_window_s", c.estimation.smoothing_window_s},
                     {"final_window_s", c.estimation.final_window_s}};
  j["sensor"] = {{"position_bits", c.sensor.position_bits},
                 {"position_range", c.sensor.position_range},
                 {"torque_bits", c.sensor.torque_bits},
                 {"noise_lsb", c.sensor.noise_lsb},
                 {"noise", c.sensor.noise == NoiseDistribution::Uniform ? "uniform" : "gaussian"}};
  if (c.sensor.torque_range.size() > 0) j["sensor"]["torque_range"] = fromVector(c.sensor.torque_range);
  j["timing"] = {{"sample_hz", c.sample_hz}, {"duration", c.duration}, {"integrator_substeps", c.integrator_substeps}};
  j["initial_q"] = fromVector(c.initial_q);
  j["poses"] = json::array();
  for (const auto& p : c.poses)
    j["poses"].push_back({{"name", p.name}, {"q", fromVector(p.q)}, {"move_time", p.move_time}, {"hold_time", p.hold_time}});
  j["rng_seed"] = c.rng_seed;
  return j.dump(2);
}

std::string scenarioHash(const ScenarioConfig& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : scenarioToJson(config)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

KinematicModel loadScenarioModel(const ScenarioConfig& config) {
  KinematicModel model = config.chain ? loadUrdfFile(config.urdf_path, config.chain->first, config.chain->second)
                                      : loadUrdfFile(config.urdf_path);
  if (config.gravity) model.gravity = *config.gravity;
  return model;
}

}  // namespace smomass
