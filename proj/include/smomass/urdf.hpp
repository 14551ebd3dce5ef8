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
#include <string_view>
#include <vector>

#include "smomass/model.hpp"

namespace smomass {

/// Non-fatal notes collected while parsing (ignored visual/collision tags...).
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// Parses a URDF document that may describe a kinematic tree.
///
/// Supports revolute, continuous and fixed joints together with the
/// `inertial`, `origin`, `axis`, `limit` and `dynamics` tags. The root link
/// may omit `inertial`; every other link must carry it. When `diagnostics`
/// is null, warnings go to standard error.
KinematicModel parseUrdfTree(std::string_view text, Diagnostics* diagnostics = nullptr);

/// Like parseUrdfTree() but requires the document to be a serial chain.
KinematicModel parseUrdf(std::string_view text, Diagnostics* diagnostics = nullptr);

/// Parses a (possibly branching) document and extracts base -> tip.
KinematicModel parseUrdf(std::string_view text, const std::string& base_link,
                         const std::string& tip_link, Diagnostics* diagnostics = nullptr);

KinematicModel loadUrdfFile(const std::string& path, Diagnostics* diagnostics = nullptr);
KinematicModel loadUrdfFile(const std::string& path, const std::string& base_link,
                            const std::string& tip_link, Diagnostics* diagnostics = nullptr);

/// Sub-chain from `base_link` to `tip_link`, re-rooted at `base_link`.
///
/// Branches hanging off the chain (and everything past the tip) are frozen at
/// zero joint angle and lumped into the chain link they attach to, so the
/// sub-chain reproduces the full model's dynamics with those joints held at
/// zero. Gravity is re-expressed in the base link frame.
KinematicModel extractChain(const KinematicModel& model, const std::string& base_link,
                            const std::string& tip_link);

/// Serializes to URDF with full double precision.
std::string toUrdf(const KinematicModel& model);

/// Roll-pitch-yaw as used by URDF origins: R = Rz(yaw) Ry(pitch) Rx(roll).
Eigen::Matrix3d rotationFromRpy(const Eigen::Vector3d& rpy);
Eigen::Vector3d rpyFromRotation(const Eigen::Matrix3d& rotation);

}  // namespace smomass
