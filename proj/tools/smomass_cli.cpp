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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smomass/dynamics.hpp"
#include "smomass/errors.hpp"
#include "smomass/filter.hpp"
#include "smomass/harness.hpp"
#include "smomass/scenario.hpp"

namespace {

using smomass::ScenarioConfig;

struct Common {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
};

void addCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("config,-c,--config", c.config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Override the scenario RNG seed");
  cmd->add_option("--duration", c.duration, "Override the run duration in seconds")->check(CLI::PositiveNumber);
}

ScenarioConfig load(const Common& c) {
  ScenarioConfig cfg = smomass::loadScenarioConfig(c.config);
  if (c.seed) {
    cfg.rng_seed = *c.seed;
    cfg.sensor.rng_seed = *c.seed;
  }
  if (c.duration) cfg.duration = *c.duration;
  cfg.validate();
  return cfg;
}

void writeTable(const std::string& dir, const std::string& file, const std::string& key,
                const std::vector<std::pair<double, double>>& rows) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / file);
  out << key << ",mass_final\n";
  for (const auto& [k, m] : rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", k, m);
    out << buf;
  }
  for (const auto& [k, m] : rows) std::printf("%s=%-6g mass_final=%.4f kg\n", key.c_str(), k, m);
}

int runSimulate(const Common& c) {
  const auto run = smomass::runScenario(load(c));
  smomass::exportLogs(run, c.out);
  std::cout << smomass::summaryToJson(run.summary);
  return 0;
}

int runKatana(const Common& c) {
  const auto run = smomass::runKatanaReplication(load(c));
  smomass::exportLogs(run, c.out);
  std::cout << smomass::summaryToJson(run.summary);
  return 0;
}

// Quick consistency checks on the scenario's model and filter, without a full run.
int runSelftest(const Common& c) {
  const ScenarioConfig cfg = load(c);
  const auto model = smomass::loadScenarioModel(cfg);
  int failures = 0;
  auto report = [&](const char* name, bool ok, double value) {
    std::printf("%s %-34s %.3e\n", ok ? "PASS" : "FAIL", name, value);
    failures += ok ? 0 : 1;
  };

  const Eigen::VectorXd q = cfg.initial_q;
  const Eigen::VectorXd qd = Eigen::VectorXd::LinSpaced(model.dof(), 0.1, 0.5);
  const Eigen::MatrixXd M = smomass::massMatrix<double>(model, q);
  report("mass matrix symmetry", (M - M.transpose()).cwiseAbs().maxCoeff() < 1e-10,
         (M - M.transpose()).cwiseAbs().maxCoeff());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().minCoeff();
  report("mass matrix min eigenvalue > 0", min_eig > 0.0, min_eig);

  const Eigen::VectorXd qdd = Eigen::VectorXd::LinSpaced(model.dof(), -1.0, 1.0);
  Eigen::VectorXd tau = smomass::inverseDynamics<double>(model, q, qd, qdd);
  tau += model.viscousFriction().cwiseProduct(qd);
  const Eigen::VectorXd back = smomass::forwardDynamics<double>(model, q, qd, tau);
  const double rt = (back - qdd).norm() / qdd.norm();
  report("forward/inverse round trip", rt < 1e-6, rt);

  const auto filter = smomass::designButterworth<double>(cfg.observer.filter_cutoff_hz, cfg.sample_hz,
                                                          cfg.observer.filter_order);
  const double dc = std::abs(filter.response(0.0));
  const double fc = std::abs(filter.response(cfg.observer.filter_cutoff_hz));
  report("filter DC gain", std::abs(dc - 1.0) < 1e-3, dc);
  report("filter gain at cutoff", std::abs(fc - std::sqrt(0.5)) < 1e-3, fc);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payload mass estimation by sliding-mode fault reconstruction"};
  app.require_subcommand(1);

  Common simulate, katana, selftest, param, l4;
  std::vector<double> scales{0.8, 1.0, 1.2};
  std::vector<double> offsets{0.18, 0.21, 0.24};

  auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario; write CSV logs and summary.json");
  addCommon(sim_cmd, simulate);
  auto* param_cmd = app.add_subcommand("param-sweep", "Sweep the observer model scale factor");
  addCommon(param_cmd, param);
  param_cmd->add_option("--scales", scales, "Scale factors")->capture_default_str();
  auto* l4_cmd = app.add_subcommand("l4-sweep", "Sweep the true payload offset, keeping the assumed l4");
  addCommon(l4_cmd, l4);
  l4_cmd->add_option("--offsets", offsets, "True offsets in metres")->capture_default_str();
  auto* kat_cmd = app.add_subcommand("katana", "Constant-torque run with automatic joint selection");
  addCommon(kat_cmd, katana);
  auto* self_cmd = app.add_subcommand("selftest", "Check dynamics and filter consistency for a scenario");
  addCommon(self_cmd, selftest);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim_cmd) return runSimulate(simulate);
    if (*kat_cmd) return runKatana(katana);
    if (*self_cmd) return runSelftest(selftest);
    if (*param_cmd) {
      writeTable(param.out, "param_sweep.csv", "scale", smomass::runParameterSensitivity(load(param), scales));
      return 0;
    }
    if (*l4_cmd) {
      writeTable(l4.out, "l4_sweep.csv", "offset", smomass::runL4Sensitivity(load(l4), offsets));
      return 0;
    }
  } catch (const smomass::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const smomass::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
