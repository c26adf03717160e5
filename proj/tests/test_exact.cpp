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

#include <doctest.h>

#include <random>
#include <set>

#include "rosuet/exact.hpp"
#include "rosuet/heuristics.hpp"
#include "support.hpp"

using namespace rosuet;

namespace {

Instance two_vertex(Time c, int m, const std::vector<int>& counts) {
  return Instance(Network(2, {{0, 1, c}}, 0), m, testing::locations_of(counts));
}

ExactOptions plain() {
  ExactOptions o;
  o.use_heuristic_shortcuts = false;
  return o;
}

// Independent timing check: tries every stay length for every pre-stay
// (critical ones fixed by A) and tests the resulting routes directly.
bool timing_exists(const Instance& inst, const PreSchedule& p, Time L) {
  const int m = inst.machine_count();
  const int g = inst.vertex_count();
  const auto counts = inst.jobs_per_vertex();
  const int s = p.size();
  std::vector<int> len(s, 0);
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == s) {
      std::vector<Time> clock(m, 0);
      std::vector<int> last(m, -1);
      std::vector<Time> arrival(s);
      std::vector<std::vector<Time>> stayed(m, std::vector<Time>(g, 0));
      for (int i = 0; i < s; ++i) {
        const int q = p.stays[i].machine;
        const int v = p.stays[i].vertex;
        arrival[i] = last[q] < 0 ? 0 : clock[q] + inst.travel(p.stays[last[q]].vertex, v);
        clock[q] = arrival[i] + len[i];
        last[q] = i;
        stayed[q][v] += len[i];
      }
      for (int i = 1; i < s; ++i) {
        if (arrival[i] < arrival[i - 1]) return false;
      }
      int prev = -1;
      for (int i = 0; i < s; ++i) {
        if (!p.in_k(i)) continue;
        if (prev >= 0) {
          const Time diff = arrival[i] - arrival[prev];
          const int d = p.displacement[i];
          if (d < 2 * m ? diff != d : diff < 2 * m) return false;
        }
        prev = i;
      }
      for (int q = 0; q < m; ++q) {
        if (last[q] < 0 || clock[q] > L) return false;
        for (int v = 0; v < g; ++v) {
          if (stayed[q][v] < counts[v]) return false;
          if (counts[v] >= m && stayed[q][v] > counts[v] + m - 1) return false;
        }
      }
      return true;
    }
    if (p.in_k(k)) {
      len[k] = p.length[k];
      return rec(k + 1);
    }
    const int v = p.stays[k].vertex;
    for (int l = 0; l <= counts[v] + m - 1; ++l) {
      len[k] = l;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("stay budget and critical vertices") {
  CHECK(stay_budget(2, 3) == 6);
  CHECK(stay_budget(1, 1) == 1);
  const Instance inst = two_vertex(1, 2, {1, 2});
  CHECK(critical_vertices(inst) == std::vector<bool>{true, false});
}

TEST_CASE("two jobs on one machine at the depot") {
  const Instance inst(Network(1, {}, 0), 1, {0, 0});
  CHECK(solve_exact(inst, plain()).makespan == 2);
  CHECK(solve_exact_by_enumeration(inst, plain()).makespan == 2);
}

TEST_CASE("small two vertex instance") {
  const Instance inst = two_vertex(1, 2, {1, 2});
  const ExactResult r = solve_exact(inst, plain());
  CHECK(r.makespan == 5);
  CHECK(r.optimal);
  CHECK(makespan(inst, r.schedule) == 5);
}

TEST_CASE("empty instance") {
  const Instance inst(Network(1, {}, 0), 3, {});
  const ExactResult r = solve_exact(inst);
  CHECK(r.makespan == 0);
  CHECK(r.schedule.job_count() == 0);
  CHECK(decide_makespan(CompactInstance(Network(1, {}, 0), 3, {0})).makespan == 0);
}

TEST_CASE("decision on compact counts") {
  CHECK(decide_makespan(CompactInstance(Network(1, {}, 0), 1, {1}), plain()).makespan == 1);
  CHECK(decide_makespan(CompactInstance(Network(2, {{0, 1, 2}}, 0), 3, {3, 3}), plain()).makespan == 10);
  CHECK(decide_makespan(CompactInstance(Network(2, {{0, 1, 2}}, 0), 3, {3, 3})).makespan == 10);
}

TEST_CASE("pre-schedule enumeration is well formed") {
  const Instance insts[] = {two_vertex(1, 1, {0, 2}), two_vertex(2, 1, {1, 1}),
                            Instance(Network(1, {}, 0), 2, {0}),
                            Instance(metric_closure(Network(3, {{0, 1, 1}, {1, 2, 2}}, 0)), 1, {1, 2})};
  for (const Instance& inst : insts) {
    const int m = inst.machine_count();
    const auto counts = inst.jobs_per_vertex();
    const auto critical = critical_vertices(inst);
    std::set<std::vector<int>> seen;
    int previous_size = 0;
    const std::uint64_t total = enumerate_preschedules(inst, [&](const PreSchedule& p) {
      CHECK(p.size() >= previous_size);
      previous_size = p.size();
      std::vector<int> flat;
      for (int k = 0; k < p.size(); ++k) {
        flat.insert(flat.end(), {p.stays[k].machine, p.stays[k].vertex, p.length[k], p.displacement[k]});
      }
      CHECK(seen.insert(flat).second);
      const auto sigma = p.sigma();
      std::vector<std::vector<int>> per(m);
      for (int k = 0; k < p.size(); ++k) per[p.stays[k].machine].push_back(k);
      for (int q = 0; q < m; ++q) {
        REQUIRE_FALSE(per[q].empty());
        CHECK(static_cast<int>(per[q].size()) <= stay_budget(m, inst.vertex_count()));
        CHECK(p.stays[per[q].front()].vertex == inst.depot());
        CHECK(p.stays[per[q].back()].vertex == inst.depot());
        std::vector<int> total_len(inst.vertex_count(), 0);
        std::set<int> visited;
        for (std::size_t i = 0; i < per[q].size(); ++i) {
          const int k = per[q][i];
          CHECK(sigma[k] == static_cast<int>(i));
          visited.insert(p.stays[k].vertex);
          if (i > 0) CHECK(p.stays[per[q][i - 1]].vertex != p.stays[k].vertex);
          if (p.in_k(k)) total_len[p.stays[k].vertex] += p.length[k];
        }
        for (int v = 0; v < inst.vertex_count(); ++v) {
          if (counts[v] > 0) CHECK(visited.count(v));
          if (critical[v]) CHECK(total_len[v] >= counts[v]);
        }
      }
      const auto ks = p.critical_indices();
      for (int k = 0; k < p.size(); ++k) {
        CHECK(p.in_k(k) == static_cast<bool>(critical[p.stays[k].vertex]));
        if (p.in_k(k)) {
          CHECK(p.length[k] >= 0);
          CHECK(p.length[k] <= 2 * m - 1);
          CHECK(p.displacement[k] >= 0);
          CHECK(p.displacement[k] <= 2 * m);
        } else {
          CHECK(p.displacement[k] == -1);
        }
      }
      if (!ks.empty()) CHECK(p.displacement[ks.front()] == 0);
      return true;
    });
    CHECK(total == seen.size());
    CHECK(total > 0);
  }
}

TEST_CASE("enumeration stops when asked") {
  const Instance inst = two_vertex(1, 1, {0, 2});
  int calls = 0;
  CHECK(enumerate_preschedules(inst, [&](const PreSchedule&) { return ++calls < 3; }) == 3);
}

TEST_CASE("timing verdicts match stay length enumeration") {
  std::vector<Instance> insts;
  for (const Instance& raw : testing::tiny_corpus(3, 1, 2, 2)) insts.push_back(preprocess(raw).instance);
  insts.push_back(Instance(Network(1, {}, 0), 2, {0}));
  insts.push_back(Instance(Network(1, {}, 0), 2, {0, 0, 0}));
  std::uint64_t checked = 0, positive = 0;
  for (const Instance& inst : insts) {
    const HamiltonianCycle h = held_karp(inst.network());
    const MakespanBounds b = makespan_bounds(inst, h);
    int budget = 400;
    enumerate_preschedules(inst, [&](const PreSchedule& p) {
      for (Time L = b.lo; L <= b.hi; ++L) {
        const auto routes = solve_timing(inst, p, L);
        CHECK(routes.has_value() == timing_exists(inst, p, L));
        ++checked;
        if (routes) {
          ++positive;
          std::string why;
          CHECK_MESSAGE(audit_compliance(inst, p, *routes, L, &why), why);
        }
      }
      return --budget > 0;
    });
  }
  CHECK(checked > 1000);
  CHECK(positive > 50);
}

TEST_CASE("compliance audit rejects tampered routes") {
  const Instance inst = two_vertex(1, 1, {0, 1});
  PreSchedule p;
  p.stays = {{0, 0}, {0, 1}, {0, 0}};
  p.length = {0, -1, 0};
  p.displacement = {0, -1, 2};
  const auto routes = solve_timing(inst, p, 3);
  REQUIRE(routes);
  CHECK(audit_compliance(inst, p, *routes, 3));
  CHECK_FALSE(audit_compliance(inst, p, *routes, 2));
  PreSchedule other = p;
  other.displacement[2] = 1;
  CHECK_FALSE(audit_compliance(inst, other, *routes, 3));
  other = p;
  other.length[0] = 1;
  CHECK_FALSE(audit_compliance(inst, other, *routes, 3));
}

TEST_CASE("malformed pre-schedules") {
  const Instance inst = two_vertex(1, 1, {0, 1});
  PreSchedule p;
  p.stays = {{0, 0}, {0, 1}, {0, 0}};
  p.length = {0, 0, 0};
  p.displacement = {0, 0, 2};
  CHECK_THROWS_AS(solve_timing(inst, p, 3), PreconditionError);
  p.length = {0, -1};
  CHECK_THROWS_AS(solve_timing(inst, p, 3), PreconditionError);
  p.stays = {{0, 1}, {0, 0}};
  p.length = {-1, 0};
  p.displacement = {-1, 0};
  CHECK_FALSE(solve_timing(inst, p, 10).has_value());
}

TEST_CASE("completion of aligned stays is a Latin square") {
  const Instance inst = two_vertex(1, 2, {0, 2});
  Routes routes(2, Route{{{0, 0, 0}, {1, 1, 3}, {4, 0, 4}}});
  const auto crit = critical_schedule_search(inst, routes);
  REQUIRE(crit);
  const Schedule s = complete_schedule(inst, routes, *crit);
  CHECK(std::set<Time>{s(0, 0), s(1, 0)} == std::set<Time>{1, 2});
  CHECK(s(0, 0) != s(0, 1));
  CHECK(s(1, 0) != s(1, 1));
  CHECK(makespan(inst, s) == 4);
}

TEST_CASE("completion on one vertex matches the cyclic schedule") {
  const Instance inst(Network(1, {}, 0), 2, {0, 0, 0});
  Routes routes(2, Route{{{0, 0, 3}}});
  const auto crit = critical_schedule_search(inst, routes);
  REQUIRE(crit);
  const Schedule s = complete_schedule(inst, routes, *crit);
  CHECK(makespan(inst, s) == makespan(inst, uniform_cyclic_schedule(inst, held_karp(inst.network()))));
}

TEST_CASE("completion rejects under-staying routes") {
  const Instance inst = two_vertex(1, 2, {0, 2});
  Routes routes(2, Route{{{0, 0, 0}, {1, 1, 2}, {3, 0, 3}}});
  CHECK_THROWS_AS(complete_schedule(inst, routes, Schedule(2, 2)), PreconditionError);
}

TEST_CASE("critical search respects the first 2m-1 units") {
  // Depot critical with one job, two machines: only [0, 3) of each depot
  // stay may be used.
  const Instance inst = two_vertex(1, 2, {1, 2});
  Routes late(2, Route{{{0, 0, 0}, {1, 1, 3}, {4, 0, 9}}});
  const auto crit = critical_schedule_search(inst, late);
  REQUIRE(crit);
  for (int q = 0; q < 2; ++q) {
    CHECK((*crit)(0, q) >= 4);
    CHECK((*crit)(0, q) < 7);
    CHECK((*crit)(1, q) == kUnset);
  }
  Routes crowded(2, Route{{{0, 0, 0}, {1, 1, 3}, {4, 0, 4}}});
  CHECK_FALSE(critical_schedule_search(inst, crowded).has_value());
}

TEST_CASE("complying routes always complete to feasible schedules") {
  std::vector<Instance> insts;
  for (const Instance& raw : testing::tiny_corpus(3, 1, 3, 2)) insts.push_back(preprocess(raw).instance);
  insts.push_back(Instance(Network(1, {}, 0), 2, {0, 0, 0}));
  insts.push_back(Instance(Network(1, {}, 0), 3, {0}));
  int completed = 0;
  for (const Instance& inst : insts) {
    const Time hi = makespan_bounds(inst, held_karp(inst.network())).hi;
    int budget = 150;
    enumerate_preschedules(inst, [&](const PreSchedule& p) {
      const auto routes = solve_timing(inst, p, hi);
      if (!routes) return --budget > 0;
      const auto crit = critical_schedule_search(inst, *routes);
      if (crit) {
        const Schedule s = complete_schedule(inst, *routes, *crit);
        const FeasibilityReport r = check_feasibility(inst, s);
        CHECK(r.feasible);
        CHECK(r.makespan <= hi);
        CHECK(routes_compatible(inst, s, *routes));
        ++completed;
      }
      return --budget > 0;
    });
  }
  CHECK(completed > 100);
}

TEST_CASE("literal enumeration agrees with the chronological search") {
  std::vector<Instance> insts;
  for (const Instance& raw : testing::tiny_corpus(3, 1, 3, 2)) insts.push_back(preprocess(raw).instance);
  for (int n = 1; n <= 3; ++n) insts.push_back(Instance(Network(1, {}, 0), 2, std::vector<int>(n, 0)));
  for (const Instance& inst : insts) {
    const ExactResult fast = solve_exact(inst, plain());
    const ExactResult literal = solve_exact_by_enumeration(inst, plain());
    CHECK(fast.makespan == literal.makespan);
    CHECK(check_feasibility(inst, literal.schedule).feasible);
  }
}

TEST_CASE("solver output is feasible and within the bounds") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 80; ++trial) {
    const Instance inst = testing::random_prepared_instance(rng, 4, 3, 2, 4);
    const ExactResult r = solve_exact(inst, plain());
    REQUIRE(r.optimal);
    const FeasibilityReport rep = check_feasibility(inst, r.schedule);
    REQUIRE(rep.feasible);
    CHECK(rep.makespan == r.makespan);
    const MakespanBounds b = makespan_bounds(inst, held_karp(inst.network()));
    CHECK(r.makespan >= b.lo);
    CHECK(r.makespan <= b.hi);
    CHECK(solve_exact(inst).makespan == r.makespan);
    CHECK(decide_makespan(compact_of(inst), plain()).makespan == r.makespan);
  }
}

TEST_CASE("parallel workers reach the same optimum") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = testing::random_prepared_instance(rng, 4, 3, 2, 4);
    ExactOptions o = plain();
    o.workers = 3;
    const ExactResult r = solve_exact(inst, o);
    CHECK(r.makespan == solve_exact(inst, plain()).makespan);
    CHECK(check_feasibility(inst, r.schedule).feasible);
  }
}

TEST_CASE("exhausted budget returns a flagged incumbent") {
  const Instance inst(metric_closure(Network(3, {{0, 1, 2}, {1, 2, 1}}, 0)), 3, {0, 1, 2, 2});
  ExactOptions o = plain();
  o.max_preschedules = 1;
  const ExactResult r = solve_exact(inst, o);
  CHECK_FALSE(r.optimal);
  const FeasibilityReport rep = check_feasibility(inst, r.schedule);
  CHECK(rep.feasible);
  CHECK(rep.makespan == r.makespan);
  CHECK_FALSE(decide_makespan(compact_of(inst), o).optimal);
  CHECK(solve_exact(inst, plain()).makespan == 11);
}

TEST_CASE("unprepared instances are rejected") {
  const Instance path(Network(3, {{0, 1, 1}, {1, 2, 1}}, 0), 1, {1, 2});
  CHECK_THROWS_AS(solve_exact(path), PreconditionError);
  const Instance untrimmed(metric_closure(Network(3, {{0, 1, 1}, {1, 2, 1}}, 0)), 1, {2});
  CHECK_THROWS_AS(solve_exact(untrimmed), PreconditionError);
}
