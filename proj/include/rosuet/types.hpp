// Copyright 2026 The rosuet Authors
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

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace rosuet {

// Time units, travel times and start times are all non-negative integers.
using Time = std::int64_t;

using TimeMatrix = Eigen::Matrix<Time, Eigen::Dynamic, Eigen::Dynamic>;
using TimeVector = Eigen::Matrix<Time, Eigen::Dynamic, 1>;

// Marks an unset start time in a partial (critical) schedule.
inline constexpr Time kUnset = -1;

// Thrown when an input file does not follow the instance or schedule format.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Thrown when a well-formed input violates a structural invariant
// (disconnected graph, bad weight, out-of-range vertex).
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an operation is called outside of its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Time checked_add(Time a, Time b) {
  Time out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("time value overflow");
  }
  return out;
}

}  // namespace rosuet
