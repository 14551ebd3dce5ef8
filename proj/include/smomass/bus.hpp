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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "smomass/types.hpp"

namespace smomass {

struct LogRecord {
  double timestamp = 0.0;
  std::string topic;
  Eigen::VectorXd payload;
};

/// In-process publish/subscribe with zero-latency synchronous delivery.
///
/// Every publication is recorded. Delivery order per topic is publication
/// order, and timestamps must be nondecreasing per topic.
class TopicBus {
 public:
  using Handler = std::function<void(const LogRecord&)>;

  void subscribe(const std::string& topic, Handler handler);
  void publish(const std::string& topic, double timestamp, Eigen::VectorXd payload);

  /// Topics in first-publication order.
  const std::vector<std::string>& topics() const { return order_; }
  const std::vector<LogRecord>& records(const std::string& topic) const;
  bool has(const std::string& topic) const { return log_.count(topic) > 0; }
  const LogRecord& latest(const std::string& topic) const;

 private:
  std::map<std::string, std::vector<LogRecord>> log_;
  std::map<std::string, std::vector<Handler>> handlers_;
  std::vector<std::string> order_;
};

}  // namespace smomass
