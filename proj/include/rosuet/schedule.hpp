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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rosuet/instance.hpp"
#include "rosuet/types.hpp"

namespace rosuet {

// Start times S(J_i, M_q) as an n x m matrix; kUnset marks "no start time"
// (jobs in non-critical vertices of a critical schedule).
struct Schedule {
  TimeMatrix start;

  Schedule() = default;
  Schedule(int jobs, int machines) : start(TimeMatrix::Constant(jobs, machines, kUnset)) {}

  int job_count() const { return static_cast<int>(start.rows()); }
  int machine_count() const { return static_cast<int>(start.cols()); }
  Time operator()(int job, int machine) const { return start(job, machine); }
  Time& operator()(int job, int machine) { return start(job, machine); }
  bool is_total() const { return (start.array() != kUnset).all(); }

  friend bool operator==(const Schedule& a, const Schedule& b) { return a.start == b.start; }
};

struct Stay {
  Time arrival;
  int vertex;
  Time departure;

  friend bool operator==(const Stay&, const Stay&) = default;
};

// Chronological stays of one machine, depot to depot.
struct Route {
  std::vector<Stay> stays;

  Time length() const { return stays.empty() ? 0 : stays.back().departure; }
  friend bool operator==(const Route&, const Route&) = default;
};

using Routes = std::vector<Route>;

enum class Violation {
  kNone,
  kMachineOverlap,  // (i): a machine processes two jobs at once
  kJobOverlap,      // (ii): a job is processed by two machines at once
  kNoRoute,         // (iii): no compatible route exists
};

// "(i)", "(ii)", "(iii)" or "".
const char* violation_tag(Violation v);

struct FeasibilityReport {
  bool feasible = false;
  Violation violation = Violation::kNone;
  // Offending pair: for kMachineOverlap two jobs on `machine`; for
  // kJobOverlap one job on two machines; for kNoRoute `machine` and the job
  // it cannot reach in time.
  int job = -1;
  int other_job = -1;
  int machine = -1;
  int other_machine = -1;
  Time makespan = 0;
  Routes routes;
  std::string message;
};

// Canonical route of every machine: maximal same-vertex runs of its jobs,
// ordered by start time, connected by direct travel, plus leading and
// trailing depot stays. Every compatible route of a machine is at least as
// long as the canonical one: departing a run as soon as its last job ends and
// travelling directly (metric times) reaches every later job as early as
// possible. Returns std::nullopt when some run cannot be reached in time.
// Requires a total schedule satisfying (i).
std::optional<Routes> compute_routes(const Instance& inst, const Schedule& sched);

// Checks Def.-2 feasibility (i)-(iii). Requires a metric, trimmed instance and
// a total schedule (PreconditionError otherwise).
FeasibilityReport check_feasibility(const Instance& inst, const Schedule& sched);

// Makespan of a feasible schedule; throws std::invalid_argument otherwise.
Time makespan(const Instance& inst, const Schedule& sched);

// True iff `routes` are valid routes (depot to depot, travel times exact)
// and every non-kUnset start time lies inside a stay at the job's vertex.
bool routes_compatible(const Instance& inst, const Schedule& sched, const Routes& routes,
                       std::string* why = nullptr);

// Text Gantt chart: one row per machine. Each time unit is one cell:
// '#' a job starts, '.' idle inside a stay, '-' travelling. After the
// timeline every stay is listed as [arrival,departure)@vertex.
std::string gantt_text(const Instance& inst, const Schedule& sched);

// "ROSUET schedule" followed by n*m lines "i q S" (1-based indices).
void write_schedule(std::ostream& out, const Schedule& sched);
Schedule read_schedule(std::istream& in, int jobs, int machines);

}  // namespace rosuet
