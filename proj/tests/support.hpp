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

#include <functional>
#include <random>
#include <vector>

#include "rosuet/generate.hpp"
#include "rosuet/instance.hpp"
#include "rosuet/oracle.hpp"

namespace rosuet::testing {

// Every count vector over `g` vertices with total between 1 and `max_jobs`.
inline std::vector<std::vector<int>> count_vectors(int g, int max_jobs) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(g, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == g) {
      if (left < max_jobs) out.push_back(c);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      c[v] = x;
      rec(v + 1, left - x);
    }
  };
  rec(0, max_jobs);
  return out;
}

inline std::vector<int> locations_of(const std::vector<int>& counts) {
  std::vector<int> loc;
  for (int v = 0; v < static_cast<int>(counts.size()); ++v) loc.insert(loc.end(), counts[v], v);
  return loc;
}

// All connected graphs with g <= max_g, weights 1..max_weight, depot 0,
// m = 1..max_m machines and 1..max_jobs jobs.
inline std::vector<Instance> tiny_corpus(int max_g = 3, int max_m = 2, int max_jobs = 4,
                                         Time max_weight = 3) {
  std::vector<Time> weights;
  for (Time w = 1; w <= max_weight; ++w) weights.push_back(w);
  std::vector<Instance> out;
  for (int g = 1; g <= max_g; ++g) {
    const auto counts = count_vectors(g, max_jobs);
    for (const Network& net : oracle::connected_networks(g, weights)) {
      for (int m = 1; m <= max_m; ++m) {
        for (const auto& c : counts) out.emplace_back(net, m, locations_of(c));
      }
    }
  }
  return out;
}

// Random metric, trimmed instance. With `non_critical` every vertex (depot
// included) receives at least m jobs.
inline Instance random_prepared_instance(std::mt19937_64& rng, int max_g, int max_m, int max_jobs,
                                         Time max_weight, bool non_critical = false) {
  GeneratorOptions o;
  o.vertices = static_cast<int>(uniform_int(rng, 1, max_g));
  o.machines = static_cast<int>(uniform_int(rng, 1, max_m));
  o.max_weight = max_weight;
  o.seed = rng();
  o.counts.assign(o.vertices, 0);
  const int floor = non_critical ? o.machines : 0;
  for (int v = 0; v < o.vertices; ++v) {
    o.counts[v] = floor + static_cast<int>(uniform_int(rng, v == 0 ? 0 : 1, max_jobs));
  }
  if (o.counts[0] == 0 && o.vertices == 1) o.counts[0] = 1;
  return preprocess(generate_instance(o)).instance;
}

}  // namespace rosuet::testing
