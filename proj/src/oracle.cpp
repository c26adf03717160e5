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

#include "rosuet/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace rosuet::oracle {
namespace {

constexpr Time kFar = std::numeric_limits<Time>::max() / 4;

// Cheapest cycle through `stops` (depot first) under `dist`, by trying
// every order of the remaining stops.
Time cheapest_tour(const TimeMatrix& dist, std::vector<int> stops) {
  if (stops.size() <= 1) return 0;
  std::sort(stops.begin() + 1, stops.end());
  Time best = kFar;
  do {
    Time cost = 0;
    for (std::size_t i = 0; i < stops.size(); ++i) {
      cost += dist(stops[i], stops[(i + 1) % stops.size()]);
    }
    best = std::min(best, cost);
  } while (std::next_permutation(stops.begin() + 1, stops.end()));
  return best;
}

struct MachineState {
  int pos;        // current vertex, or destination while travelling
  int wait;       // time units until arrival at pos
  std::uint32_t done;
  bool finished;  // back at the depot with every job processed

  std::uint64_t key() const {
    return static_cast<std::uint64_t>(finished) | static_cast<std::uint64_t>(pos) << 1 |
           static_cast<std::uint64_t>(wait) << 8 | static_cast<std::uint64_t>(done) << 24;
  }
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return h;
  }
};

struct Node {
  std::vector<MachineState> machines;
  int parent;
  std::vector<int> processed;  // job per machine in the step leading here, -1 if none
};

class TimeStepSearch {
 public:
  TimeStepSearch(const Instance& inst, Time horizon)
      : inst_(inst), horizon_(horizon), n_(inst.job_count()), m_(inst.machine_count()),
        depot_(inst.depot()), dist_(shortest_paths(inst.network())),
        full_(n_ == 32 ? ~0u : (1u << n_) - 1) {}

  std::optional<OracleResult> run() {
    if (n_ > 24) throw PreconditionError("brute_force_optimal: too many jobs");
    if (n_ == 0) return OracleResult{0, Schedule(0, m_)};
    std::vector<Node> layer;
    Node start{std::vector<MachineState>(m_, MachineState{depot_, 0, 0, false}), -1, {}};
    layer.push_back(start);
    layers_.push_back(layer);
    for (Time t = 0;; ++t) {
      const auto& current = layers_.back();
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (all_finished(current[i].machines)) return reconstruct(t, static_cast<int>(i));
      }
      if (t >= horizon_ || current.empty()) return std::nullopt;
      expand(t);
    }
  }

 private:
  bool all_finished(const std::vector<MachineState>& ms) const {
    return std::all_of(ms.begin(), ms.end(), [](const MachineState& s) { return s.finished; });
  }

  Time lower_bound(const std::vector<MachineState>& ms) const {
    Time lb = 0;
    for (const MachineState& s : ms) {
      if (s.finished) continue;
      Time travel = dist_(s.pos, depot_);
      Time pending = 0;
      for (int j = 0; j < n_; ++j) {
        if (s.done >> j & 1) continue;
        ++pending;
        const int v = inst_.location(j);
        travel = std::max(travel, dist_(s.pos, v) + dist_(v, depot_));
      }
      lb = std::max(lb, s.wait + pending + travel);
    }
    for (int j = 0; j < n_; ++j) {
      Time missing = 0;
      for (const MachineState& s : ms) missing += (s.done >> j & 1) ? 0 : 1;
      lb = std::max(lb, missing);
    }
    return lb;
  }

  void normalize(MachineState& s) const {
    if (!s.finished && s.wait == 0 && s.pos == depot_ && s.done == full_) s.finished = true;
  }

  // Successor options of one machine for the step starting at time t.
  // Each option: (next state, job processed or -1).
  std::vector<std::pair<MachineState, int>> options(const MachineState& s) const {
    std::vector<std::pair<MachineState, int>> out;
    if (s.finished) {
      out.emplace_back(s, -1);
      return out;
    }
    if (s.wait > 0) {
      MachineState next = s;
      --next.wait;
      normalize(next);
      out.emplace_back(next, -1);
      return out;
    }
    const bool idle = s.done == full_;
    if (!idle) {
      for (int j = 0; j < n_; ++j) {
        if ((s.done >> j & 1) || inst_.location(j) != s.pos) continue;
        MachineState next = s;
        next.done |= 1u << j;
        normalize(next);
        out.emplace_back(next, j);
      }
      out.emplace_back(s, -1);
    }
    const int g = inst_.vertex_count();
    for (int w = 0; w < g; ++w) {
      if (!inst_.network().has_edge(s.pos, w)) continue;
      const Time c = inst_.network().weight(s.pos, w);
      // A machine with nothing left only heads home along shortest paths.
      if (idle && c + dist_(w, depot_) != dist_(s.pos, depot_)) continue;
      MachineState next = s;
      next.pos = w;
      next.wait = static_cast<int>(c - 1);
      normalize(next);
      out.emplace_back(next, -1);
    }
    return out;
  }

  void expand(Time t) {
    const auto& current = layers_.back();
    std::vector<Node> next_layer;
    std::unordered_map<std::vector<std::uint64_t>, int, KeyHash> index;
    for (std::size_t i = 0; i < current.size(); ++i) {
      std::vector<std::vector<std::pair<MachineState, int>>> choice(m_);
      for (int q = 0; q < m_; ++q) choice[q] = options(current[i].machines[q]);
      std::vector<MachineState> states(m_, current[i].machines[0]);
      std::vector<int> jobs(m_, -1);
      combine(0, 0u, choice, states, jobs, t, static_cast<int>(i), next_layer, index);
    }
    layers_.push_back(std::move(next_layer));
  }

  void combine(int q, std::uint32_t taken,
               const std::vector<std::vector<std::pair<MachineState, int>>>& choice,
               std::vector<MachineState>& states, std::vector<int>& jobs, Time t, int parent,
               std::vector<Node>& out,
               std::unordered_map<std::vector<std::uint64_t>, int, KeyHash>& index) const {
    if (q == m_) {
      if (t + 1 + lower_bound(states) > horizon_) return;
      std::vector<std::uint64_t> key(m_);
      for (int r = 0; r < m_; ++r) key[r] = states[r].key();
      if (index.count(key)) return;
      index.emplace(std::move(key), static_cast<int>(out.size()));
      out.push_back({states, parent, jobs});
      return;
    }
    for (const auto& [state, job] : choice[q]) {
      if (job >= 0 && (taken >> job & 1)) continue;
      states[q] = state;
      jobs[q] = job;
      combine(q + 1, job >= 0 ? taken | 1u << job : taken, choice, states, jobs, t, parent, out,
              index);
    }
  }

  OracleResult reconstruct(Time t, int idx) const {
    OracleResult result{t, Schedule(n_, m_)};
    for (Time layer = t; layer > 0; --layer) {
      const Node& node = layers_[layer][idx];
      for (int q = 0; q < m_; ++q) {
        if (node.processed[q] >= 0) result.schedule(node.processed[q], q) = layer - 1;
      }
      idx = node.parent;
    }
    return result;
  }

  const Instance& inst_;
  Time horizon_;
  int n_, m_, depot_;
  TimeMatrix dist_;
  std::uint32_t full_;
  std::vector<std::vector<Node>> layers_;
};

// Makespan of a total start-time matrix under canonical shortest-path routes,
// or -1 if a machine or job is double-booked or a route cannot be followed.
Time score(const Instance& inst, const TimeMatrix& dist, const std::vector<Time>& start) {
  const int n = inst.job_count();
  const int m = inst.machine_count();
  const int depot = inst.depot();
  Time makespan = 0;
  std::vector<std::pair<Time, int>> order(n);
  for (int q = 0; q < m; ++q) {
    for (int j = 0; j < n; ++j) order[j] = {start[j * m + q], j};
    std::sort(order.begin(), order.end());
    int at = depot;
    Time free = 0;
    for (const auto& [s, j] : order) {
      const int v = inst.location(j);
      if (s < free + dist(at, v)) return -1;
      at = v;
      free = s + 1;
    }
    makespan = std::max(makespan, free + dist(at, depot));
  }
  for (int j = 0; j < n; ++j) {
    for (int q = 0; q < m; ++q) {
      for (int r = q + 1; r < m; ++r) {
        if (start[j * m + q] == start[j * m + r]) return -1;
      }
    }
  }
  return makespan;
}

}  // namespace

TimeMatrix shortest_paths(const Network& net) {
  const int g = net.vertex_count();
  TimeMatrix dist = TimeMatrix::Constant(g, g, kFar);
  using Item = std::pair<Time, int>;
  for (int s = 0; s < g; ++s) {
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist(s, s) = 0;
    heap.emplace(0, s);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist(s, u)) continue;
      for (int v = 0; v < g; ++v) {
        if (!net.has_edge(u, v)) continue;
        const Time nd = d + net.weight(u, v);
        if (nd < dist(s, v)) {
          dist(s, v) = nd;
          heap.emplace(nd, v);
        }
      }
    }
  }
  return dist;
}

Time default_horizon(const Instance& inst) {
  if (inst.job_count() == 0) return 0;
  const TimeMatrix dist = shortest_paths(inst.network());
  std::vector<int> stops{inst.depot()};
  const auto counts = inst.jobs_per_vertex();
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (v != inst.depot() && counts[v] > 0) stops.push_back(v);
  }
  return cheapest_tour(dist, stops) + inst.job_count() + inst.machine_count() - 1;
}

std::optional<OracleResult> brute_force_optimal(const Instance& inst, Time horizon) {
  TimeStepSearch search(inst, horizon);
  return search.run();
}

std::optional<OracleResult> brute_force_optimal(const Instance& inst) {
  return brute_force_optimal(inst, default_horizon(inst));
}

std::optional<Time> naive_optimal(const Instance& inst, Time horizon) {
  const int cells = inst.job_count() * inst.machine_count();
  if (cells == 0) return 0;
  if (horizon <= 0) return std::nullopt;
  const TimeMatrix dist = shortest_paths(inst.network());
  std::vector<Time> start(cells, 0);
  std::optional<Time> best;
  while (true) {
    const Time value = score(inst, dist, start);
    if (value >= 0 && value <= horizon && (!best || value < *best)) best = value;
    int c = 0;
    while (c < cells && ++start[c] == horizon) start[c++] = 0;
    if (c == cells) break;
  }
  return best;
}

WalkBoundReport verify_walk_bound(const Network& net, int k_max) {
  const int g = net.vertex_count();
  WalkBoundReport report;
  std::vector<int> all(g);
  std::iota(all.begin(), all.end(), 0);
  report.w = cheapest_tour(shortest_paths(net), all);
  const int base = 2 * g - 2;
  const auto weights = min_closed_spanning_walk_weights(net, base + k_max);
  for (int k = 0; k <= k_max; ++k) {
    WalkBoundEntry e;
    e.k = k;
    e.length = base + k;
    e.bound = report.w + k;
    e.feasible = weights[e.length] >= 0;
    if (e.feasible) {
      e.weight = weights[e.length];
      if (e.weight < e.bound) {
        e.witness = *min_closed_spanning_walk(net, e.length);
        report.violations.push_back(e);
      }
    }
    report.entries.push_back(e);
  }
  return report;
}

std::vector<Network> connected_networks(int g, const std::vector<Time>& weights) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < g; ++u) {
    for (int v = u + 1; v < g; ++v) pairs.emplace_back(u, v);
  }
  std::vector<Network> out;
  const std::size_t subsets = std::size_t{1} << pairs.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<int> parent(g);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::pair<int, int>> chosen;
    int components = g;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      chosen.push_back(pairs[i]);
      const int a = find(pairs[i].first);
      const int b = find(pairs[i].second);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components != 1) continue;
    std::vector<std::size_t> digit(chosen.size(), 0);
    while (true) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        edges.push_back({chosen[i].first, chosen[i].second, weights[digit[i]]});
      }
      out.emplace_back(g, std::move(edges), 0);
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == weights.size()) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  return out;
}

SweepSummary walk_bound_sweep(int g_max, int k_max, const std::vector<Time>& weights) {
  SweepSummary summary;
  for (int g = 1; g <= g_max; ++g) {
    for (const Network& net : connected_networks(g, weights)) {
      ++summary.graphs;
      const WalkBoundReport report = verify_walk_bound(net, k_max);
      for (const WalkBoundEntry& e : report.violations) {
        ++summary.violations;
        std::string walk;
        for (int v : e.witness.vertices) walk += (walk.empty() ? "" : " ") + std::to_string(v + 1);
        summary.details.push_back("g=" + std::to_string(g) + " k=" + std::to_string(e.k) +
                                  " weight " + std::to_string(e.weight) + " < " +
                                  std::to_string(e.bound) + " walk " + walk);
      }
    }
  }
  return summary;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string instance_hash(const Instance& inst) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_string(inst))));
  return buf;
}

}  // namespace rosuet::oracle
