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

#include <Eigen/Core>

#include "rosuet/graph.hpp"
#include "rosuet/instance.hpp"
#include "rosuet/schedule.hpp"

namespace rosuet {

// Cyclic shift matrix s'_{iq} = (i - q) mod n (0-based indices). A cell is
// red when i < q and green otherwise.
struct ShiftMatrix {
  Eigen::MatrixXi values;

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  bool red(int i, int q) const { return i < q; }
};

ShiftMatrix shift_matrix(int n, int m);

struct MakespanBounds {
  Time lo;  // c(H) + n
  Time hi;  // c(H) + n + m - 1
};

// Optimal makespan lies in [lo, hi]. Requires n >= 1.
MakespanBounds makespan_bounds(const Instance& inst, const HamiltonianCycle& h);

// All machines traverse H once, machine q lagging q time units behind
// machine 0. Makespan c(H) + n + m - 1.
Schedule sequential_schedule(const Instance& inst, const HamiltonianCycle& h);

// Machines traverse H twice: green cells of the shift matrix on the first
// pass, red cells on the second. Pads with depot dummies when n < m and strips
// them afterwards. Witness routes have length 2c(H) + max(n, m).
Schedule double_cycle_schedule(const Instance& inst, const HamiltonianCycle& h);
Routes double_cycle_routes(const Instance& inst, const HamiltonianCycle& h);

// All machines follow H once, staying n_v units in each vertex; requires
// n_v >= m for every vertex (PreconditionError otherwise). Makespan c(H) + n.
Schedule uniform_cyclic_schedule(const Instance& inst, const HamiltonianCycle& h);

// True iff no vertex (depot included) has fewer jobs than machines.
bool has_no_critical_vertex(const Instance& inst);

}  // namespace rosuet
