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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rosuet/instance.hpp"
#include "rosuet/schedule.hpp"

namespace rosuet {

// Pre-stay (q_k, w_k): machine q_k makes its next stay in vertex w_k.
struct PreStay {
  int machine;
  int vertex;

  friend bool operator==(const PreStay&, const PreStay&) = default;
};

// Pre-schedule (T, A, D). `length` and `displacement` have one entry per
// pre-stay; entries outside K (pre-stays in non-critical vertices) are -1.
// The displacement of the first pre-stay in K carries no constraint and is 0.
struct PreSchedule {
  std::vector<PreStay> stays;
  std::vector<int> length;
  std::vector<int> displacement;

  int size() const { return static_cast<int>(stays.size()); }
  bool in_k(int k) const { return length[k] >= 0; }
  // K in increasing order.
  std::vector<int> critical_indices() const;
  // 0-based ordinal of pre-stay k among the pre-stays of its machine.
  std::vector<int> sigma() const;

  friend bool operator==(const PreSchedule&, const PreSchedule&) = default;
};

// Maximum number of stays of one machine in a route compatible with an
// optimal schedule: m + 2g - 2.
int stay_budget(int machines, int vertices);

// v is critical iff n_v < m.
std::vector<bool> critical_vertices(const Instance& inst);

// Streams every pre-schedule whose pre-stay sequence starts and ends at the
// depot for every machine, visits every job-hosting vertex with every machine,
// never repeats a vertex in two consecutive pre-stays of one machine and keeps
// within stay_budget; A ranges over {0..2m-1} with each machine's critical
// stays in v summing to at least n_v, D over {0..2m}. Order: total pre-stay
// count, then lexicographic. `visit` returns false to stop. Returns the number
// of pre-schedules visited. Requires a metric, trimmed instance.
std::uint64_t enumerate_preschedules(const Instance& inst,
                                     const std::function<bool(const PreSchedule&)>& visit);

// Integer arrival/departure times for routes complying with `p`, each of
// length at most L and staying at least n_v in every vertex. Non-critical
// stay lengths are searched with per-vertex totals capped at n_v + m - 1.
// std::nullopt when no such routes exist.
std::optional<Routes> solve_timing(const Instance& inst, const PreSchedule& p, Time L);

// Independent check that `routes` are valid routes of length <= L, stay at
// least n_v in every vertex and comply with p (sequence, order, lengths,
// displacements).
bool audit_compliance(const Instance& inst, const PreSchedule& p, const Routes& routes, Time L,
                      std::string* why = nullptr);

// Start times for every (job in a critical vertex, machine) pair, chosen among
// the first 2m-1 time units the machine spends in the job's vertex, such that
// no machine processes two jobs and no job is processed twice at a time. All
// other entries are kUnset. std::nullopt when no assignment exists.
std::optional<Schedule> critical_schedule_search(const Instance& inst, const Routes& routes);

// Extends a critical schedule to a total schedule compatible with `routes`
// by edge-coloring the machine/time-slot graph of every non-critical vertex.
// Throws PreconditionError when a route stays less than n_v in some
// non-critical vertex.
Schedule complete_schedule(const Instance& inst, const Routes& routes, const Schedule& critical);

struct ExactOptions {
  // Distinct pre-schedules to examine before giving up; 0 = unlimited.
  std::uint64_t max_preschedules = 0;
  // Wall-clock limit in seconds; 0 = none.
  double timeout_seconds = 0;
  int workers = 1;
  // Accept a constructive schedule as soon as its makespan matches the
  // current target L (all smaller targets having been refuted), and skip the
  // search entirely when no vertex is critical.
  bool use_heuristic_shortcuts = true;
};

struct ExactResult {
  Schedule schedule;
  Time makespan = 0;
  // false when the budget ran out; `schedule` is then the best constructive
  // schedule.
  bool optimal = true;
  std::uint64_t preschedules = 0;
};

// Minimum-makespan schedule. Requires a metric, trimmed instance.
// Targets L run from c(H)+n to c(H)+n+m-1; for each, routes are searched
// chronologically, which enumerates exactly the pre-schedules admitting
// complying routes of length <= L; each distinct pre-schedule is tried once
// with critical-schedule search and edge-coloring completion.
ExactResult solve_exact(const Instance& inst, const ExactOptions& options = {});

// Literal variant: for each L, enumerate_preschedules -> solve_timing ->
// critical_schedule_search -> complete_schedule. Only practical for tiny
// instances; used to cross-check solve_exact.
ExactResult solve_exact_by_enumeration(const Instance& inst, const ExactOptions& options = {});

struct DecideResult {
  Time makespan = 0;
  bool optimal = true;
  std::uint64_t preschedules = 0;
};

// Optimal makespan from job counts alone; no schedule is materialized.
// Requires a metric, trimmed compact instance.
DecideResult decide_makespan(const CompactInstance& ci, const ExactOptions& options = {});

}  // namespace rosuet
