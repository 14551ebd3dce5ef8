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

// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/energy_fd.hpp"
#include "oracles/two_link.hpp"
#include "smomass/dynamics.hpp"
#include "smomass/ekf.hpp"
#include "smomass/filter.hpp"
#include "smomass/harness.hpp"
#include "smomass/plant.hpp"
#include "support.hpp"

using namespace smomass;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void check(bool pass, const std::string& what) {
    ok = ok && pass;
    detail += (detail.empty() ? "" : "; ") + what + (pass ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

ScenarioConfig config(const std::string& name) {
  return loadScenarioConfig(testing_support::dataPath("config/" + name + ".json"));
}

ScenarioConfig clean(ScenarioConfig cfg) {
  cfg.sensor.noise_lsb = 0;
  cfg.sensor.position_bits = 32;
  cfg.sensor.torque_bits = 32;
  return cfg;
}

KinematicModel frictionless(KinematicModel model) {
  for (auto& j : model.joints) {
    j.viscous_friction = 0.0;
    if (j.limits) j.limits->has_position = false;
  }
  return model;
}

Payload armPayload() {
  Payload p;
  p.mass = 0.25;
  p.attach_frame = "la_grip_center";
  p.reference_frame = "la_link6";
  return p;
}

Outcome baselineMass() {
  Outcome o;
  const double m = runScenario(config("baseline")).summary.mass_final;
  o.check(std::abs(m - 0.25) <= 0.025, fmt("mass_final %.4f kg, want 0.25 +/- 0.025", m));
  return o;
}

Outcome nullPayload() {
  Outcome o;
  const double m = runScenario(config("null_payload")).summary.mass_final;
  o.check(std::abs(m) <= 0.02, fmt("mass_final %.4f kg, want |m| <= 0.02", m));
  return o;
}

Outcome modelScale() {
  Outcome o;
  const auto r = runParameterSensitivity(config("baseline"), {0.8, 1.0, 1.2});
  o.check(r[0].second > 0.27, fmt("scale 0.8 -> %.4f (> 0.27)", r[0].second));
  o.check(r[2].second < 0.23, fmt("scale 1.2 -> %.4f (< 0.23)", r[2].second));
  o.check(r[0].second > r[1].second && r[1].second > r[2].second, fmt("scale 1.0 -> %.4f, ordered", r[1].second));
  return o;
}

Outcome l4Sweep() {
  Outcome o;
  for (const auto& [offset, m] : runL4Sensitivity(config("baseline"), {0.18, 0.21, 0.24})) {
    const double want = 0.25 * offset / 0.21;
    o.check(std::abs(m - want) <= 0.1 * want, fmt("offset %.2f -> %.4f (want %.4f +/- 10%%)", offset, m, want));
  }
  return o;
}

Outcome katana() {
  Outcome o;
  const auto run = runKatanaReplication(config("katana"));
  o.check(run.summary.estimation_joint == "katana_motor4_lift_joint", "selected " + run.summary.estimation_joint);
  o.check(run.summary.mass_final >= 0.18 && run.summary.mass_final <= 0.22,
          fmt("mass_final %.4f kg in [0.18, 0.22]", run.summary.mass_final));
  return o;
}

Outcome dynamicsProperties() {
  Outcome o;
  const oracle::TwoLink two;
  const std::vector<KinematicModel> fixtures{testing_support::leftArm(), testing_support::katana(),
                                             testing_support::fullRobotArm(), two.model()};
  std::mt19937_64 rng(2026);
  double asym = 0.0, min_eig = 1e300, round_trip = 0.0;
  for (const auto& model : fixtures) {
    for (int k = 0; k < 1000; ++k) {
      const Eigen::VectorXd q = testing_support::randomConfiguration(model, rng);
      const Eigen::MatrixXd M = massMatrix<double>(model, q);
      asym = std::max(asym, (M - M.transpose()).cwiseAbs().maxCoeff());
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().minCoeff());
      if (k < 100) {
        const Eigen::VectorXd qd = testing_support::randomVector(model.dof(), 1.0, rng);
        const Eigen::VectorXd qdd = testing_support::randomVector(model.dof(), 2.0, rng);
        const Eigen::VectorXd tau =
            inverseDynamics<double>(model, q, qd, qdd) + model.viscousFriction().cwiseProduct(qd);
        round_trip = std::max(round_trip, (forwardDynamics<double>(model, q, qd, tau) - qdd).cwiseAbs().maxCoeff());
      }
    }
  }
  o.check(asym <= 1e-10, fmt("M asymmetry %.1e", asym));
  o.check(min_eig > 0.0, fmt("min eig %.2e", min_eig));
  o.check(round_trip <= 1e-6, fmt("FD/ID round trip %.1e", round_trip));

  double closed = 0.0;
  const auto tl = two.model();
  for (int k = 0; k < 200; ++k) {
    const Eigen::Vector2d q = testing_support::randomVector(2, 3.0, rng);
    const Eigen::Vector2d qd = testing_support::randomVector(2, 2.0, rng);
    const Eigen::Vector2d qdd = testing_support::randomVector(2, 2.0, rng);
    closed = std::max(closed, (inverseDynamics<double>(tl, q, qd, qdd) - two.torque(q, qd, qdd)).cwiseAbs().maxCoeff());
    closed = std::max(closed, (massMatrix<double>(tl, q) - two.mass(q)).cwiseAbs().maxCoeff());
  }
  o.check(closed <= 1e-8, fmt("two-link closed form %.1e", closed));

  const KinematicModel arm = attachPayload(frictionless(testing_support::leftArm()), armPayload());
  RobotState s((Eigen::VectorXd(7) << 0.6, 0.2, 0.3, 0.9, -0.2, 0.5, 0.1).finished(), Eigen::VectorXd::Zero(7));
  auto energy = [&](const RobotState& st) {
    return oracle::kineticEnergyFd(arm, st.q, st.qd) + oracle::potentialEnergy(arm, st.q);
  };
  const double e0 = energy(s);
  double drift = 0.0;
  for (int k = 0; k < 2500; ++k) {
    s = integrate(arm, s, Eigen::VectorXd::Zero(7), 0.004, 4);
    drift = std::max(drift, std::abs(energy(s) - e0) / std::abs(e0));
  }
  o.check(drift < 1e-5, fmt("energy drift %.1e over 10 s", drift));
  return o;
}

double smoError(const RunResult& run, double t0) {
  const auto& truth = run.bus.records(topics::kTrueState);
  const auto& smo = run.bus.records(topics::kSmoState);
  double worst = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (truth[k].timestamp < t0) continue;
    const auto n = truth[k].payload.size() / 2;
    worst = std::max(worst, (truth[k].payload.head(n) - smo[k].payload.head(n)).cwiseAbs().maxCoeff());
  }
  return worst;
}

Outcome observerProperties() {
  Outcome o;
  ScenarioConfig with = clean(config("baseline"));
  ScenarioConfig without = with;
  without.payload.reset();
  const double e_with = smoError(runScenario(with), 2.0);
  const double e_without = smoError(runScenario(without), 2.0);
  o.check(e_with < 1e-4 && e_without < 1e-4, fmt("SMO error after 2 s %.1e / %.1e (payload / none)", e_with, e_without));

  // EKF covariance on a noisy closed loop.
  const KinematicModel arm = testing_support::leftArm();
  PlantConfig pc;
  pc.model = arm;
  pc.payload = armPayload();
  pc.sensor.torque_range = defaultTorqueRange(arm);
  const Eigen::VectorXd q0 = (Eigen::VectorXd(7) << 0.5, 0, 0, 0.7, 0, 0.3, 0).finished();
  Plant plant(pc, RobotState(q0, Eigen::VectorXd::Zero(7)));
  EkfState ekf = EkfState::initial(plant.measure());
  double p_asym = 0.0, p_min = 1e300;
  for (int k = 0; k < 5000; ++k) {
    const Eigen::VectorXd y = plant.measure();
    const Eigen::VectorXd u = quantizeTorque(
        gravityVector<double>(arm, ekf.x1_hat) + 2.5 * (q0 - ekf.x1_hat) - 0.5 * ekf.x2_hat, pc.sensor);
    ekf = ekfStep(ekf, y, u, arm, 0.004);
    p_asym = std::max(p_asym, (ekf.P - ekf.P.transpose()).cwiseAbs().maxCoeff());
    p_min = std::min(p_min, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ekf.P).eigenvalues().minCoeff());
    plant.step(u);
  }
  o.check(p_asym <= 1e-10 && p_min >= 0.0, fmt("EKF P asymmetry %.1e, min eig %.2e", p_asym, p_min));

  const auto filter = designButterworth<double>(1.0, 250.0, 4);
  const double dc = std::abs(filter.response(0.0));
  const double fc = std::abs(filter.response(1.0));
  o.check(std::abs(dc - 1.0) <= 1e-3 && std::abs(fc - std::sqrt(0.5)) <= 1e-3,
          fmt("filter |H(0)| %.6f, |H(fc)| %.6f", dc, fc));

  ScenarioConfig held = clean(config("baseline"));
  held.mode = ControlMode::ConstantTorque;
  held.initial_q = (Eigen::VectorXd(7) << 0.5, 0.1, 0.2, 0.8, 0.1, 0.4, 0.0).finished();
  held.duration = 10.0;
  const auto run = runScenario(held);
  const Eigen::VectorXd q = run.bus.latest(topics::kTrueState).payload.head(7);
  const KinematicModel nominal = loadScenarioModel(held);
  const KinematicModel augmented = attachPayload(nominal, *held.payload);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(7);
  const Eigen::VectorXd expected =
      -(inverseDynamics<double>(augmented, q, z, z) - inverseDynamics<double>(nominal, q, z, z));
  const Eigen::VectorXd got = run.bus.latest(topics::kDisturbanceTorque).payload;
  double worst = 0.0;
  for (int i = 0; i < 7; ++i)
    if (std::abs(expected[i]) > 0.01) worst = std::max(worst, std::abs(got[i] - expected[i]) / std::abs(expected[i]));
  o.check(worst <= 0.05, fmt("injection torque vs static oracle %.2f%%", 100.0 * worst));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "smomass_acceptance";
  fs::remove_all(root);
  const ScenarioConfig cfg = config("baseline");
  exportLogs(runScenario(cfg), (root / "a").string());
  exportLogs(runScenario(cfg), (root / "b").string());
  int files = 0, same = 0;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    ++files;
    same += slurp(e.path()) == slurp(root / "b" / e.path().filename()) ? 1 : 0;
  }
  o.check(files > 0 && files == same, fmt("%g of %g files byte-identical", same, files));
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"baseline mass estimate", baselineMass},
      {"null payload", nullPayload},
      {"observer model scale sensitivity", modelScale},
      {"payload offset sweep", l4Sweep},
      {"katana replication", katana},
      {"dynamics properties", dynamicsProperties},
      {"observer properties", observerProperties},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %d %s: %s\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
