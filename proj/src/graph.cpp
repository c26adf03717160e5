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

#include "rosuet/graph.hpp"

#include <algorithm>
#include <limits>

namespace rosuet {

namespace {

constexpr Time kInf = std::numeric_limits<Time>::max() / 4;

}  // namespace

std::vector<int> HamiltonianCycle::positions() const {
  std::vector<int> pos(order.size(), -1);
  for (int k = 0; k < static_cast<int>(order.size()); ++k) pos[order[k]] = k;
  return pos;
}

HamiltonianCycle held_karp(const Network& net) {
  if (!net.is_metric()) throw PreconditionError("held_karp requires a metric network");
  const int g = net.vertex_count();
  if (g > 24) throw PreconditionError("held_karp: too many vertices");
  const int depot = net.depot();
  const TimeMatrix& c = net.weights();

  std::vector<int> others;
  for (int v = 0; v < g; ++v) {
    if (v != depot) others.push_back(v);
  }
  const int k = static_cast<int>(others.size());

  HamiltonianCycle h;
  h.order.push_back(depot);
  if (k == 0) {
    h.prefix_costs = {0};
    return h;
  }

  const std::size_t subsets = std::size_t{1} << k;
  std::vector<Time> dp(subsets * k, kInf);
  std::vector<int> parent(subsets * k, -1);
  auto at = [k](std::size_t mask, int j) { return mask * k + j; };
  for (int j = 0; j < k; ++j) dp[at(std::size_t{1} << j, j)] = c(depot, others[j]);

  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (int j = 0; j < k; ++j) {
      if (!(mask >> j & 1)) continue;
      const Time base = dp[at(mask, j)];
      if (base >= kInf) continue;
      for (int nxt = 0; nxt < k; ++nxt) {
        if (mask >> nxt & 1) continue;
        const std::size_t to = mask | (std::size_t{1} << nxt);
        const Time cand = base + c(others[j], others[nxt]);
        if (cand < dp[at(to, nxt)]) {
          dp[at(to, nxt)] = cand;
          parent[at(to, nxt)] = j;
        }
      }
    }
  }

  const std::size_t full = subsets - 1;
  int last = 0;
  Time best = kInf;
  for (int j = 0; j < k; ++j) {
    const Time cand = dp[at(full, j)] + c(others[j], depot);
    if (cand < best) {
      best = cand;
      last = j;
    }
  }

  std::vector<int> tail;
  std::size_t mask = full;
  for (int j = last; j >= 0;) {
    tail.push_back(others[j]);
    const int p = parent[at(mask, j)];
    mask &= ~(std::size_t{1} << j);
    j = p;
  }
  h.order.insert(h.order.end(), tail.rbegin(), tail.rend());
  h.cost = best;
  h.prefix_costs.assign(g, 0);
  for (int i = 1; i < g; ++i) {
    h.prefix_costs[i] = h.prefix_costs[i - 1] + c(h.order[i - 1], h.order[i]);
  }
  return h;
}

int BipartiteGraph::max_degree() const {
  std::vector<int> deg(left_count + right_count, 0);
  for (const auto& [l, r] : edges) {
    ++deg[l];
    ++deg[left_count + r];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<int> edge_color_bipartite(const BipartiteGraph& bg) {
  const int delta = bg.max_degree();
  const int nv = bg.left_count + bg.right_count;
  // slot[v * delta + color] = edge index or -1
  std::vector<int> slot(static_cast<std::size_t>(nv) * delta, -1);
  std::vector<int> color(bg.edges.size(), -1);
  auto ends = [&](int e) {
    return std::pair{bg.edges[e].first, bg.left_count + bg.edges[e].second};
  };
  auto free_color = [&](int v) {
    for (int col = 0; col < delta; ++col) {
      if (slot[v * delta + col] < 0) return col;
    }
    return -1;
  };

  for (int e = 0; e < static_cast<int>(bg.edges.size()); ++e) {
    const auto [u, v] = ends(e);
    const int a = free_color(u);
    const int b = free_color(v);
    if (slot[v * delta + a] >= 0) {
      // Swap a/b along the alternating path leaving v on color a. In a
      // bipartite graph this path cannot end at u.
      std::vector<int> path;
      int x = v;
      int col = a;
      while (slot[x * delta + col] >= 0) {
        const int f = slot[x * delta + col];
        path.push_back(f);
        const auto [p, q] = ends(f);
        x = (p == x) ? q : p;
        col = (col == a) ? b : a;
      }
      for (int f : path) {
        const auto [p, q] = ends(f);
        slot[p * delta + color[f]] = -1;
        slot[q * delta + color[f]] = -1;
      }
      for (int f : path) {
        color[f] = (color[f] == a) ? b : a;
        const auto [p, q] = ends(f);
        slot[p * delta + color[f]] = f;
        slot[q * delta + color[f]] = f;
      }
    }
    color[e] = a;
    slot[u * delta + a] = e;
    slot[v * delta + a] = e;
  }
  return color;
}

namespace {

// table[(l * subsets + mask) * g + v]: lightest walk from `anchor` using l
// edges, visiting exactly `mask`, currently at v.
std::vector<Time> walk_table(const Network& net, int anchor, int max_length) {
  const int g = net.vertex_count();
  const std::size_t subsets = std::size_t{1} << g;
  const TimeMatrix& w = net.weights();
  std::vector<Time> table((max_length + 1) * subsets * g, kInf);
  auto at = [&](int l, std::size_t mask, int v) { return (l * subsets + mask) * g + v; };
  table[at(0, std::size_t{1} << anchor, anchor)] = 0;
  for (int l = 0; l < max_length; ++l) {
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      if (!(mask >> anchor & 1)) continue;
      for (int u = 0; u < g; ++u) {
        const Time base = table[at(l, mask, u)];
        if (base >= kInf) continue;
        for (int v = 0; v < g; ++v) {
          if (v == u || w(u, v) == 0) continue;
          Time& cell = table[at(l + 1, mask | (std::size_t{1} << v), v)];
          cell = std::min(cell, base + w(u, v));
        }
      }
    }
  }
  return table;
}

}  // namespace

std::vector<Time> min_closed_spanning_walk_weights(const Network& net, int max_length) {
  const int g = net.vertex_count();
  if (g > 20) throw PreconditionError("min_closed_spanning_walk: too many vertices");
  if (max_length < 0) return {};
  const std::size_t subsets = std::size_t{1} << g;
  const std::size_t full = subsets - 1;
  std::vector<Time> best(max_length + 1, kInf);
  for (int anchor = 0; anchor < g; ++anchor) {
    const auto table = walk_table(net, anchor, max_length);
    for (int l = 0; l <= max_length; ++l) {
      best[l] = std::min(best[l], table[(l * subsets + full) * g + anchor]);
    }
  }
  for (Time& b : best) {
    if (b >= kInf) b = -1;
  }
  return best;
}

std::optional<ClosedWalk> min_closed_spanning_walk(const Network& net, int length) {
  const int g = net.vertex_count();
  if (g > 20) throw PreconditionError("min_closed_spanning_walk: too many vertices");
  if (length < 0) return std::nullopt;
  const std::size_t subsets = std::size_t{1} << g;
  const std::size_t full = subsets - 1;
  const TimeMatrix& w = net.weights();

  int best_anchor = -1;
  Time best = kInf;
  std::vector<Time> best_table;
  for (int anchor = 0; anchor < g; ++anchor) {
    auto table = walk_table(net, anchor, length);
    const Time value = table[(length * subsets + full) * g + anchor];
    if (value < best) {
      best = value;
      best_anchor = anchor;
      best_table = std::move(table);
    }
  }
  if (best_anchor < 0) return std::nullopt;

  auto at = [&](int l, std::size_t mask, int v) { return (l * subsets + mask) * g + v; };
  ClosedWalk walk;
  walk.weight = best;
  walk.vertices.assign(length + 1, best_anchor);
  std::size_t mask = full;
  int v = best_anchor;
  for (int l = length; l > 0; --l) {
    const Time here = best_table[at(l, mask, v)];
    bool found = false;
    for (int u = 0; u < g && !found; ++u) {
      if (u == v || w(u, v) == 0) continue;
      const std::size_t without = mask & ~(std::size_t{1} << v);
      for (std::size_t prev : {mask, without}) {
        if (!(prev >> best_anchor & 1) || !(prev >> u & 1)) continue;
        const Time before = best_table[at(l - 1, prev, u)];
        if (before < kInf && before + w(u, v) == here) {
          mask = prev;
          v = u;
          found = true;
          break;
        }
      }
    }
    walk.vertices[l - 1] = v;
  }
  return walk;
}

}  // namespace rosuet
