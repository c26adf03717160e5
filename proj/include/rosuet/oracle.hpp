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
#include <optional>
#include <string>
#include <vector>

#include "rosuet/graph.hpp"
#include "rosuet/instance.hpp"
#include "rosuet/schedule.hpp"

// Ground truth for tiny instances. Nothing here calls the exact solver, the
// heuristics or the schedule checker; shortest paths and feasibility are
// re-derived locally.
namespace rosuet::oracle {

struct OracleResult {
  Time makespan = 0;
  Schedule schedule;
};

// All-pairs shortest paths by Dijkstra from every vertex.
TimeMatrix shortest_paths(const Network& net);

// c(H) + n + m - 1, with c(H) from shortest paths and permutation search.
// Every instance with n >= 1 has a schedule of this makespan.
Time default_horizon(const Instance& inst);

// Exact optimum by breadth-first search over time steps. Machines walk the
// edges of the given network, so metric closure and trimming are not needed.
// std::nullopt when no schedule finishes by `horizon`.
std::optional<OracleResult> brute_force_optimal(const Instance& inst, Time horizon);
std::optional<OracleResult> brute_force_optimal(const Instance& inst);

// Minimum makespan over every start-time matrix in [0, horizon)^(n x m),
// scored with canonical shortest-path routes. No pruning; horizon^(n*m)
// schedules are visited.
std::optional<Time> naive_optimal(const Instance& inst, Time horizon);

struct WalkBoundEntry {
  int k = 0;
  int length = 0;
  bool feasible = false;
  Time weight = 0;  // minimum weight at this length when feasible
  Time bound = 0;   // W + k
  ClosedWalk witness;
};

struct WalkBoundReport {
  Time w = 0;  // minimum weight of any closed spanning walk
  std::vector<WalkBoundEntry> entries;
  std::vector<WalkBoundEntry> violations;
};

// For k = 0..k_max, compares the lightest closed spanning walk with exactly
// 2g-2+k edges against W + k.
WalkBoundReport verify_walk_bound(const Network& net, int k_max);

// Every connected simple graph on g labelled vertices with every assignment
// of edge weights from `weights`; vertex 0 is the depot.
std::vector<Network> connected_networks(int g, const std::vector<Time>& weights);

struct SweepSummary {
  std::uint64_t graphs = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> details;
};

// verify_walk_bound over connected_networks(g, weights) for g = 1..g_max.
SweepSummary walk_bound_sweep(int g_max, int k_max, const std::vector<Time>& weights);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& text);
// Lower-case hex FNV-1a hash of the standard serialization.
std::string instance_hash(const Instance& inst);

}  // namespace rosuet::oracle
