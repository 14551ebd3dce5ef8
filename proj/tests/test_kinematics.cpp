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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles/transforms.hpp"
#include "smomass/kinematics.hpp"
#include "support.hpp"

using namespace smomass;

class KinematicsFixture : public ::testing::TestWithParam<const char*> {};

TEST_P(KinematicsFixture, LinkPosesMatchHomogeneousChain) {
  const auto model = loadUrdfFile(testing_support::dataPath(GetParam()));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd q = testing_support::randomConfiguration(model, rng);
    const auto poses = linkPoses<double>(model, q);
    const auto T = oracle::linkTransforms(model, q);
    for (std::size_t i = 0; i < poses.size(); ++i) {
      EXPECT_LT((poses[i].rotation - T[i].topLeftCorner<3, 3>()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((poses[i].translation - T[i].topRightCorner<3, 1>()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, KinematicsFixture,
                         ::testing::Values("urdf/justina_left_arm.urdf", "urdf/katana.urdf"));

TEST(Kinematics, EulerZyxRecoversAngles) {
  const double roll = 0.2, pitch = -0.6, yaw = 1.3;
  const Eigen::Matrix3d R = (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
                             Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
                             Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
                                .toRotationMatrix();
  const EulerZYX e = eulerZYX(R);
  EXPECT_NEAR(e.roll, roll, 1e-12);
  EXPECT_NEAR(e.pitch, pitch, 1e-12);
  EXPECT_NEAR(e.yaw, yaw, 1e-12);
  EXPECT_FALSE(e.degenerate);
}

TEST(Kinematics, EulerZyxFlagsGimbalLock) {
  const Eigen::Matrix3d R = Eigen::AngleAxisd(std::numbers::pi / 2, Eigen::Vector3d::UnitY()).toRotationMatrix();
  const EulerZYX e = eulerZYX(R);
  EXPECT_TRUE(e.degenerate);
  EXPECT_NEAR(e.pitch, std::numbers::pi / 2, 1e-9);
}

TEST(Kinematics, WristPitchIsSumOfPlanarJoints) {
  const auto model = testing_support::leftArm();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(7);
  q << 0.4, 0.0, 0.0, 0.6, 0.0, -0.5, 0.9;
  EXPECT_NEAR(framePitch(forwardKinematics<double>(model, q, "la_link6")), 0.5, 1e-12);
  // Joint 7 turns about the link axis: R = Ry(0.5) Rz(0.9), so sin(pitch) = sin(0.5) cos(0.9).
  EXPECT_NEAR(framePitch(forwardKinematics<double>(model, q, "la_grip_center")), std::asin(std::sin(0.5) * std::cos(0.9)),
              1e-12);
}

TEST(Kinematics, UnknownFrameThrows) {
  const auto model = testing_support::leftArm();
  EXPECT_ANY_THROW(forwardKinematics<double>(model, Eigen::VectorXd::Zero(7), "nope"));
}

TEST(Kinematics, JointAxesInBaseAtHome) {
  const auto model = testing_support::leftArm();
  const auto axes = jointAxesInBase(model, Eigen::VectorXd::Zero(7));
  ASSERT_EQ(axes.size(), 7u);
  EXPECT_LT((axes[0] - Eigen::Vector3d::UnitY()).norm(), 1e-15);
  EXPECT_LT((axes[2] - Eigen::Vector3d::UnitZ()).norm(), 1e-15);
  EXPECT_LT((axes[5] - Eigen::Vector3d::UnitY()).norm(), 1e-15);
}
