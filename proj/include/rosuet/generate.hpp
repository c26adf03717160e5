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
#include <random>
#include <vector>

#include "rosuet/instance.hpp"

namespace rosuet {

struct GeneratorOptions {
  int vertices = 1;
  int machines = 1;
  // Either exact per-vertex counts (size == vertices) or, when empty,
  // `total_jobs` jobs dropped on uniformly random vertices.
  std::vector<int> counts;
  int total_jobs = 1;
  Time max_weight = 1;
  std::uint64_t seed = 0;
};

// Unbiased draw from [lo, hi] by rejection on raw 64-bit output, so results
// depend only on the seed and not on the standard library in use.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

// Complete graph with weights drawn from [1, max_weight], replaced by its
// metric closure; vertex 0 is the depot.
Instance generate_instance(const GeneratorOptions& options);

}  // namespace rosuet
