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

#include "rosuet/generate.hpp"

#include <limits>

namespace rosuet {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

Instance generate_instance(const GeneratorOptions& options) {
  const int g = options.vertices;
  if (g < 1) throw std::invalid_argument("generate_instance: need at least one vertex");
  if (options.machines < 1) throw std::invalid_argument("generate_instance: need at least one machine");
  if (options.max_weight < 1) throw std::invalid_argument("generate_instance: max weight below 1");
  if (!options.counts.empty() && static_cast<int>(options.counts.size()) != g) {
    throw std::invalid_argument("generate_instance: one job count per vertex expected");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<Edge> edges;
  for (int u = 0; u < g; ++u) {
    for (int v = u + 1; v < g; ++v) edges.push_back({u, v, uniform_int(rng, 1, options.max_weight)});
  }
  std::vector<int> locations;
  if (!options.counts.empty()) {
    for (int v = 0; v < g; ++v) {
      if (options.counts[v] < 0) throw std::invalid_argument("generate_instance: negative job count");
      locations.insert(locations.end(), options.counts[v], v);
    }
  } else {
    if (options.total_jobs < 0) throw std::invalid_argument("generate_instance: negative job count");
    for (int j = 0; j < options.total_jobs; ++j) {
      locations.push_back(static_cast<int>(uniform_int(rng, 0, g - 1)));
    }
  }
  return metric_closure(Instance(Network(g, std::move(edges), 0), options.machines,
                                 std::move(locations)));
}

}  // namespace rosuet
