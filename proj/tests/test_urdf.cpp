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

#include <fstream>
#include <sstream>

#include "smomass/dynamics.hpp"
#include "smomass/errors.hpp"
#include "smomass/urdf.hpp"
#include "support.hpp"

using namespace smomass;
using testing_support::dataPath;

namespace {

const char* kTwoJoint = R"(<?xml version="1.0"?>
<robot name="mini">
  <link name="base"/>
  <joint name="j1" type="revolute">
    <parent link="base"/><child link="a"/>
    <origin xyz="0 0 0.1" rpy="0 0 0"/><axis xyz="0 1 0"/>
    <limit lower="-1" upper="1" effort="5" velocity="2"/>
    <dynamics damping="0.25"/>
  </joint>
  <link name="a">
    <inertial><origin xyz="0 0 -0.1"/><mass value="1.0"/>
      <inertia ixx="0.01" ixy="0" ixz="0" iyy="0.01" iyz="0" izz="0.001"/></inertial>
    <visual><geometry><box size="0.1 0.1 0.1"/></geometry></visual>
  </link>
  <joint name="j2" type="continuous">
    <parent link="a"/><child link="b"/>
    <origin xyz="0 0 -0.2" rpy="0.1 0.2 0.3"/><axis xyz="0 0 1"/>
  </joint>
  <link name="b">
    <inertial><origin xyz="0 0 -0.05" rpy="0.3 0 0"/><mass value="0.5"/>
      <inertia ixx="0.004" ixy="0.0001" ixz="0" iyy="0.003" iyz="0" izz="0.002"/></inertial>
  </link>
</robot>)";

std::string readText(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

}  // namespace

TEST(Urdf, LeftArmFixtureIsSevenDofChain) {
  const auto model = testing_support::leftArm();
  EXPECT_EQ(model.dof(), 7);
  EXPECT_EQ(model.links.size(), 9u);
  EXPECT_TRUE(model.isSerialChain());
  EXPECT_EQ(model.links.front().name, "la_base_link");
  EXPECT_EQ(model.links.back().name, "la_grip_center");
}

TEST(Urdf, KatanaFixtureHasMotorFourLift) {
  const auto model = testing_support::katana();
  EXPECT_EQ(model.dof(), 5);
  ASSERT_TRUE(model.findJoint("katana_motor4_lift_joint"));
  EXPECT_TRUE(model.findLink("katana_motor4_lift_link"));
}

TEST(Urdf, ParsesLimitsDampingAndInertialFrames) {
  Diagnostics diag;
  const auto model = parseUrdf(kTwoJoint, &diag);
  ASSERT_EQ(model.dof(), 2);
  const Joint& j1 = model.joints[0];
  ASSERT_TRUE(j1.limits);
  EXPECT_DOUBLE_EQ(j1.limits->lower, -1.0);
  EXPECT_DOUBLE_EQ(j1.limits->effort, 5.0);
  EXPECT_DOUBLE_EQ(j1.viscous_friction, 0.25);
  EXPECT_EQ(model.joints[1].kind, JointKind::Continuous);
  // Rotated inertial frame is re-expressed in the link frame; trace is invariant.
  EXPECT_NEAR(model.links[2].inertia.trace(), 0.009, 1e-15);
  EXPECT_NEAR(model.links[2].inertia(0, 1), model.links[2].inertia(1, 0), 0.0);
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_NE(diag.warnings[0].find("visual"), std::string::npos);
}

TEST(Urdf, RejectsPrismaticJoint) {
  EXPECT_THROW(parseUrdf(replace(kTwoJoint, "type=\"continuous\"", "type=\"prismatic\"")), UnsupportedJointError);
}

TEST(Urdf, MissingInertialOnNonRootLinkNamesTheLink) {
  std::string text = kTwoJoint;
  const auto start = text.find("<inertial><origin xyz=\"0 0 -0.05\"");
  const auto end = text.find("</inertial>", start) + std::string("</inertial>").size();
  text.erase(start, end - start);
  try {
    parseUrdf(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos) << e.what();
  }
}

TEST(Urdf, MalformedXmlReportsLine) {
  const std::string text = "<robot name=\"x\">\n  <link name=\"a\"/>\n  <link name=\"b\" <\n</robot>\n";
  try {
    parseUrdf(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Urdf, XacroIsRejectedWithHint) {
  const std::string text = R"(<robot xmlns:xacro="http://www.ros.org/wiki/xacro" name="r"><xacro:macro name="m"/></robot>)";
  try {
    parseUrdf(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("xacro"), std::string::npos);
  }
}

TEST(Urdf, StrictParserRejectsBranchingTree) {
  const std::string text = readText(dataPath("urdf/justina_full.urdf"));
  try {
    parseUrdf(text);
    FAIL() << "expected TopologyError";
  } catch (const TopologyError& e) {
    EXPECT_NE(std::string(e.what()).find("la_mount_joint"), std::string::npos) << e.what();
  }
  const auto tree = parseUrdfTree(text);
  EXPECT_FALSE(tree.isSerialChain());
  EXPECT_EQ(tree.dof(), 16);
}

TEST(Urdf, ExtractedArmMatchesStandaloneArmDynamics) {
  const auto chain = testing_support::fullRobotArm();
  const auto arm = testing_support::leftArm();
  ASSERT_EQ(chain.dof(), 7);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXd q = testing_support::randomConfiguration(arm, rng);
    const Eigen::VectorXd qd = testing_support::randomVector(7, 1.0, rng);
    const Eigen::VectorXd qdd = testing_support::randomVector(7, 2.0, rng);
    EXPECT_LT((massMatrix<double>(chain, q) - massMatrix<double>(arm, q)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((inverseDynamics<double>(chain, q, qd, qdd) - inverseDynamics<double>(arm, q, qd, qdd)).norm(), 1e-10);
  }
}

TEST(Urdf, ExtractChainLumpsOffChainBranches) {
  // The side branch hanging off l1 is frozen at zero and lumped into l1.
  const auto full = parseUrdfTree(R"(<robot name="t">
    <link name="r"/>
    <joint name="a" type="revolute"><parent link="r"/><child link="l1"/><axis xyz="0 1 0"/>
      <limit lower="-3" upper="3" effort="1" velocity="1"/></joint>
    <link name="l1"><inertial><origin xyz="0 0 -0.1"/><mass value="1"/>
      <inertia ixx="0.01" ixy="0" ixz="0" iyy="0.01" iyz="0" izz="0.01"/></inertial></link>
    <joint name="b" type="revolute"><parent link="l1"/><child link="l2"/><origin xyz="0 0 -0.2"/><axis xyz="0 1 0"/>
      <limit lower="-3" upper="3" effort="1" velocity="1"/></joint>
    <link name="l2"><inertial><origin xyz="0 0 -0.1"/><mass value="0.5"/>
      <inertia ixx="0.01" ixy="0" ixz="0" iyy="0.01" iyz="0" izz="0.01"/></inertial></link>
    <joint name="side" type="revolute"><parent link="l1"/><child link="s"/><origin xyz="0.1 0 0"/><axis xyz="1 0 0"/>
      <limit lower="-3" upper="3" effort="1" velocity="1"/></joint>
    <link name="s"><inertial><origin xyz="0 0 -0.05"/><mass value="0.3"/>
      <inertia ixx="0.001" ixy="0" ixz="0" iyy="0.001" iyz="0" izz="0.001"/></inertial></link>
  </robot>)");
  const auto chain = extractChain(full, "r", "l2");
  ASSERT_EQ(chain.dof(), 2);
  Eigen::VectorXd q_full(3), q(2);
  q << 0.4, -0.7;
  q_full << 0.4, -0.7, 0.0;
  const Eigen::VectorXd g_full = gravityVector<double>(full, q_full);
  const Eigen::VectorXd g = gravityVector<double>(chain, q);
  // Joint order in the full tree: a, b, side (document order).
  EXPECT_NEAR(g[0], g_full[0], 1e-12);
  EXPECT_NEAR(g[1], g_full[1], 1e-12);
}

TEST(Urdf, ExtractChainRequiresAncestor) {
  const auto tree = parseUrdfTree(readText(dataPath("urdf/justina_full.urdf")));
  EXPECT_THROW(extractChain(tree, "la_link3", "ra_link5"), TopologyError);
  EXPECT_THROW(extractChain(tree, "torso_link", "no_such_link"), UnknownLinkError);
}

TEST(Urdf, RoundTripPreservesDynamics) {
  const auto arm = testing_support::leftArm();
  const auto again = parseUrdf(toUrdf(arm));
  ASSERT_EQ(again.dof(), arm.dof());
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd q = testing_support::randomConfiguration(arm, rng);
    const Eigen::VectorXd qd = testing_support::randomVector(7, 1.0, rng);
    EXPECT_EQ(inverseDynamics<double>(again, q, qd, qd), inverseDynamics<double>(arm, q, qd, qd));
  }
  EXPECT_EQ(again.viscousFriction(), arm.viscousFriction());
}

TEST(Urdf, RpyConventionMatchesUrdf) {
  const Eigen::Vector3d rpy(0.3, -0.2, 1.1);
  const Eigen::Matrix3d R = rotationFromRpy(rpy);
  const Eigen::Matrix3d expected = (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
                                    Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
                                    Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
                                       .toRotationMatrix();
  EXPECT_LT((R - expected).norm(), 1e-15);
  EXPECT_LT((rpyFromRotation(R) - rpy).norm(), 1e-12);
}

TEST(Urdf, ValidateRejectsTriangleInequalityViolation) {
  auto model = testing_support::leftArm();
  model.links[3].inertia = Eigen::Vector3d(0.1, 0.1, 0.5).asDiagonal();
  EXPECT_THROW(validate(model), ValidationError);
}
