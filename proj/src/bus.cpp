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

#include "smomass/bus.hpp"

#include "smomass/errors.hpp"

namespace smomass {

void TopicBus::subscribe(const std::string& topic, Handler handler) { handlers_[topic].push_back(std::move(handler)); }

void TopicBus::publish(const std::string& topic, double timestamp, Eigen::VectorXd payload) {
  auto [it, inserted] = log_.try_emplace(topic);
  if (inserted) order_.push_back(topic);
  auto& records = it->second;
  if (!records.empty() && timestamp < records.back().timestamp)
    throw Error("topic '" + topic + "' received a timestamp that goes backwards");
  records.push_back({timestamp, topic, std::move(payload)});
  if (auto h = handlers_.find(topic); h != handlers_.end()) {
    for (const auto& handler : h->second) handler(records.back());
  }
}

const std::vector<LogRecord>& TopicBus::records(const std::string& topic) const {
  auto it = log_.find(topic);
  if (it == log_.end()) throw Error("no records on topic '" + topic + "'");
  return it->second;
}

const LogRecord& TopicBus::latest(const std::string& topic) const { return records(topic).back(); }

}  // namespace smomass
