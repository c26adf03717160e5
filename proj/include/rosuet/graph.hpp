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

#include <optional>
#include <utility>
#include <vector>

#include "rosuet/instance.hpp"
#include "rosuet/types.hpp"

namespace rosuet {

// Minimum-cost Hamiltonian cycle (v_1 = depot, v_2, ..., v_g, back to v_1).
struct HamiltonianCycle {
  std::vector<int> order;
  Time cost = 0;
  // prefix_costs[k]: travel time from the depot to order[k] along the cycle.
  std::vector<Time> prefix_costs;

  int vertex_count() const { return static_cast<int>(order.size()); }
  // Position of each vertex on the cycle.
  std::vector<int> positions() const;
};

// Held-Karp subset dynamic program. Requires a metric (complete) network;
// practical up to roughly 20 vertices.
HamiltonianCycle held_karp(const Network& net);

// Left side: machines. Right side: time slots. No parallel edges.
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right)

  int max_degree() const;
};

// Proper edge coloring with exactly max_degree() colors available; returns the
// color (0-based, < max_degree()) of every edge in input order. Uses
// alternating-path recoloring, which never needs more than Delta colors on a
// bipartite graph.
std::vector<int> edge_color_bipartite(const BipartiteGraph& bg);

struct ClosedWalk {
  Time weight = 0;
  std::vector<int> vertices;  // v_1, ..., v_{l+1} with v_1 == v_{l+1}
};

// Minimum-weight closed walk with exactly `length` edges that visits every
// vertex; std::nullopt when no such walk exists. DP over (vertex, visited
// set, edges used) for every anchor vertex. Works on any connected network
// (non-complete graphs included); g <= 20.
std::optional<ClosedWalk> min_closed_spanning_walk(const Network& net, int length);

// Minimum weights for every length 0..max_length from one DP pass;
// entry is -1 when infeasible.
std::vector<Time> min_closed_spanning_walk_weights(const Network& net, int max_length);

}  // namespace rosuet
