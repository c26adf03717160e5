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

#include "rosuet/heuristics.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace rosuet {

namespace {

void require_prepared(const Instance& inst, const HamiltonianCycle& h) {
  if (!inst.is_metric() || !inst.is_trimmed()) {
    throw PreconditionError("constructive schedules need a metric, trimmed instance");
  }
  if (h.vertex_count() != inst.vertex_count()) {
    throw PreconditionError("Hamiltonian cycle does not match the instance");
  }
}

// Job indices sorted by the cycle position of their vertex, ties by index.
std::vector<int> jobs_in_cycle_order(const std::vector<int>& locations,
                                     const std::vector<int>& position) {
  std::vector<int> order(locations.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return position[locations[a]] < position[locations[b]];
  });
  return order;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

ShiftMatrix shift_matrix(int n, int m) {
  ShiftMatrix s;
  s.values.resize(n, m);
  for (int i = 0; i < n; ++i) {
    for (int q = 0; q < m; ++q) s.values(i, q) = mod(i - q, n);
  }
  return s;
}

MakespanBounds makespan_bounds(const Instance& inst, const HamiltonianCycle& h) {
  require_prepared(inst, h);
  if (inst.job_count() < 1) throw PreconditionError("makespan_bounds requires n >= 1");
  const Time lo = h.cost + inst.job_count();
  return {lo, lo + inst.machine_count() - 1};
}

Schedule sequential_schedule(const Instance& inst, const HamiltonianCycle& h) {
  require_prepared(inst, h);
  const auto position = h.positions();
  const auto order = jobs_in_cycle_order(inst.job_locations(), position);
  Schedule s(inst.job_count(), inst.machine_count());
  for (int p = 0; p < static_cast<int>(order.size()); ++p) {
    const int job = order[p];
    const Time travel = h.prefix_costs[position[inst.location(job)]];
    for (int q = 0; q < inst.machine_count(); ++q) s(job, q) = p + q + travel;
  }
  return s;
}

Schedule double_cycle_schedule(const Instance& inst, const HamiltonianCycle& h) {
  require_prepared(inst, h);
  const int n = inst.job_count();
  const int m = inst.machine_count();
  const int padded = std::max(n, m);
  std::vector<int> locations = inst.job_locations();
  locations.resize(padded, inst.depot());

  const auto position = h.positions();
  const auto order = jobs_in_cycle_order(locations, position);
  const ShiftMatrix shift = shift_matrix(padded, m);
  Schedule s(n, m);
  for (int i = 0; i < padded; ++i) {
    const int job = order[i];
    if (job >= n) continue;  // dummy
    const Time ck = h.prefix_costs[position[locations[job]]];
    for (int q = 0; q < m; ++q) {
      s(job, q) = shift.values(i, q) + ck + (shift.red(i, q) ? h.cost : 0);
    }
  }
  return s;
}

Routes double_cycle_routes(const Instance& inst, const HamiltonianCycle& h) {
  require_prepared(inst, h);
  const int n = inst.job_count();
  const int m = inst.machine_count();
  const int g = inst.vertex_count();
  const int padded = std::max(n, m);
  std::vector<int> locations = inst.job_locations();
  locations.resize(padded, inst.depot());
  const auto position = h.positions();
  const auto order = jobs_in_cycle_order(locations, position);

  Routes routes(m);
  for (int q = 0; q < m; ++q) {
    // Units spent in cycle vertex k on pass 0 (green) and pass 1 (red).
    std::vector<std::array<Time, 2>> units(g, {0, 0});
    for (int i = 0; i < padded; ++i) {
      ++units[position[locations[order[i]]]][i < q ? 1 : 0];
    }
    auto& stays = routes[q].stays;
    if (g == 1) {
      stays.push_back({0, inst.depot(), static_cast<Time>(padded)});
      continue;
    }
    Time t = 0;
    int prev = -1;
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < g; ++k) {
        const int v = h.order[k];
        if (prev >= 0) t += inst.travel(prev, v);
        stays.push_back({t, v, t + units[k][pass]});
        t += units[k][pass];
        prev = v;
      }
    }
    t += inst.travel(prev, inst.depot());
    stays.push_back({t, inst.depot(), t});
  }
  return routes;
}

bool has_no_critical_vertex(const Instance& inst) {
  const auto counts = inst.jobs_per_vertex();
  return std::all_of(counts.begin(), counts.end(),
                     [&](int c) { return c >= inst.machine_count(); });
}

Schedule uniform_cyclic_schedule(const Instance& inst, const HamiltonianCycle& h) {
  require_prepared(inst, h);
  if (!has_no_critical_vertex(inst)) {
    throw PreconditionError("each vertex contains at least m jobs");
  }
  const int m = inst.machine_count();
  Schedule s(inst.job_count(), m);
  Time arrival = 0;
  for (int k = 0; k < h.vertex_count(); ++k) {
    const int v = h.order[k];
    if (k > 0) arrival += inst.travel(h.order[k - 1], v);
    const auto jobs = inst.jobs_in(v);
    const int nk = static_cast<int>(jobs.size());
    // Local index within the vertex keeps (i - q) mod n_k a Latin rectangle.
    for (int local = 0; local < nk; ++local) {
      for (int q = 0; q < m; ++q) s(jobs[local], q) = arrival + mod(local - q, nk);
    }
    arrival += nk;
  }
  return s;
}

}  // namespace rosuet
