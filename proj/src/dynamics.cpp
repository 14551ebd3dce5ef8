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

#include "smomass/dynamics.hpp"

namespace smomass::detail {

std::string chainDescription(const KinematicModel& model) {
  std::string out = "[";
  for (int j : model.movableJoints()) {
    if (out.size() > 1) out += ", ";
    out += model.joints[static_cast<std::size_t>(j)].name;
  }
  return out + "]";
}

}  // namespace smomass::detail
