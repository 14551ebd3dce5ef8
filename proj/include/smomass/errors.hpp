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

#include <stdexcept>
#include <string>

namespace smomass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed XML or a document that is not a URDF robot.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UnsupportedJointError : public Error {
 public:
  using Error::Error;
};

/// Branching trees, missing paths, disconnected links.
class TopologyError : public Error {
 public:
  using Error::Error;
};

class UnknownLinkError : public Error {
 public:
  using Error::Error;
};

/// Physically invalid inertial or joint data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Mass matrix failed its Cholesky factorization.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InstabilityError : public Error {
 public:
  using Error::Error;
};

class ObserverBlowupError : public Error {
 public:
  using Error::Error;
};

class CovarianceError : public Error {
 public:
  using Error::Error;
};

class FilterDesignError : public Error {
 public:
  using Error::Error;
};

/// Mass formula evaluated with |theta| at or below the threshold.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A module error raised inside a scenario run, tagged with where and when.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& scenario, const std::string& stage, double time, const std::string& cause)
      : Error("scenario '" + scenario + "': " + stage + " failed at t=" + std::to_string(time) + " s: " + cause),
        stage_(stage),
        time_(time) {}
  const std::string& stage() const { return stage_; }
  double time() const { return time_; }

 private:
  std::string stage_;
  double time_;
};

}  // namespace smomass
