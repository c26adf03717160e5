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

#include <queue>
#include <random>
#include <sstream>

#include "rosuet/generate.hpp"
#include "rosuet/instance.hpp"
#include "support.hpp"

using namespace rosuet;

namespace {

int error_line(const std::string& text) {
  try {
    std::istringstream in(text);
    parse_instance(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

// Label-correcting single-source search, one source at a time.
TimeMatrix relaxation_distances(const Network& net) {
  const int g = net.vertex_count();
  TimeMatrix d = TimeMatrix::Constant(g, g, -1);
  for (int s = 0; s < g; ++s) {
    std::queue<int> work;
    d(s, s) = 0;
    work.push(s);
    while (!work.empty()) {
      const int u = work.front();
      work.pop();
      for (const Edge& e : net.edges()) {
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (a != u) continue;
          const Time nd = d(s, u) + e.weight;
          if (d(s, b) < 0 || nd < d(s, b)) {
            d(s, b) = nd;
            work.push(b);
          }
        }
      }
    }
  }
  return d;
}

Network random_connected(std::mt19937_64& rng, int g, Time max_weight) {
  std::vector<Edge> edges;
  for (int v = 1; v < g; ++v) {
    edges.push_back({static_cast<int>(uniform_int(rng, 0, v - 1)), v, uniform_int(rng, 1, max_weight)});
  }
  for (int u = 0; u < g; ++u) {
    for (int v = u + 1; v < g; ++v) {
      bool present = false;
      for (const Edge& e : edges) present |= (e.u == u && e.v == v) || (e.u == v && e.v == u);
      if (!present && uniform_int(rng, 0, 2) == 0) edges.push_back({u, v, uniform_int(rng, 1, max_weight)});
    }
  }
  return Network(g, edges, 0);
}

}  // namespace

TEST_CASE("standard file fields are echoed") {
  const Instance inst = parse_standard("ROSUET standard\n2 2 3\ndepot 1\n1\n1 2 3\n1 2 2\n");
  CHECK(inst.vertex_count() == 2);
  CHECK(inst.machine_count() == 2);
  CHECK(inst.job_count() == 3);
  CHECK(inst.depot() == 0);
  CHECK(inst.travel(0, 1) == 3);
  CHECK(inst.job_locations() == std::vector<int>{0, 1, 1});
  CHECK(inst.jobs_per_vertex() == std::vector<int>{1, 2});
}

TEST_CASE("compact file sums its counts") {
  const CompactInstance ci = parse_compact("ROSUET compact\n2 3\ndepot 1\n1\n1 2 4\n1 2\n");
  CHECK(ci.job_count() == 3);
  CHECK(ci.machine_count == 3);
  std::istringstream in("ROSUET compact\n2 3\ndepot 1\n1\n1 2 4\n1 2\n");
  CHECK(std::holds_alternative<CompactInstance>(parse_instance(in)));
}

TEST_CASE("comments are skipped") {
  const Instance inst =
      parse_standard("# leading\nROSUET standard\n# mid\n1 1 2\ndepot 1\n0\n# jobs\n1 1\n");
  CHECK(inst.job_count() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("ROSUET something\n") == 1);
  CHECK(error_line("hello\n") == 1);
  CHECK(error_line("ROSUET standard\n3 1 1\ndepot 1\n1\n1 2 1\n1\n") == 5);   // vertex 3 unreachable
  CHECK(error_line("ROSUET standard\n2 1 1\ndepot 1\n1\n1 2 0\n1\n") == 5);   // weight 0
  CHECK(error_line("ROSUET standard\n2 1 1\ndepot 1\n1\n1 3 1\n1\n") == 5);   // vertex out of range
  CHECK(error_line("ROSUET standard\n2 1 1\ndepot 3\n1\n1 2 1\n1\n") == 3);   // depot out of range
  CHECK(error_line("ROSUET standard\n2 1 1\ndepot 1\n1\n1 2 1\n4\n") == 6);   // job location
  CHECK(error_line("ROSUET standard\n2 1 1\ndepot 1\n2\n1 2 1\n2 1 1\n1\n") == 6);  // parallel
  CHECK(error_line("ROSUET standard\n2 1 1\ndepot 1\n1\n1 1 1\n1\n") == 5);   // self-loop
  CHECK(error_line("ROSUET standard\n1 1 1\ndepot 1\n0\n1\n1\n") == 6);       // trailing data
  CHECK(error_line("ROSUET standard\n1 1 2\ndepot 1\n0\n1\n") == 5);          // missing job
  CHECK(error_line("ROSUET standard\n1 0 1\ndepot 1\n0\n1\n") == 2);          // no machines
}

TEST_CASE("disconnected edge list is rejected with a message") {
  std::istringstream in("ROSUET standard\n3 1 1\ndepot 1\n1\n1 2 1\n1\n");
  CHECK_THROWS_WITH_AS(parse_instance(in), doctest::Contains("disconnected"), ParseError);
}

TEST_CASE("single vertex network needs no edges") {
  const Instance inst = parse_standard("ROSUET standard\n1 2 3\ndepot 1\n0\n1 1 1\n");
  CHECK(inst.is_metric());
  CHECK(inst.is_trimmed());
}

TEST_CASE("wrong encoding requested") {
  std::istringstream in("ROSUET standard\n1 1 1\ndepot 1\n0\n1\n");
  CHECK_THROWS_AS(parse_instance(in, Encoding::kCompact), ParseError);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int g = static_cast<int>(uniform_int(rng, 1, 6));
    const Network net = random_connected(rng, g, 9);
    std::vector<int> loc;
    const int n = static_cast<int>(uniform_int(rng, 0, 7));
    for (int j = 0; j < n; ++j) loc.push_back(static_cast<int>(uniform_int(rng, 0, g - 1)));
    const Instance inst(net, static_cast<int>(uniform_int(rng, 1, 4)), loc);
    const Instance back = parse_standard(to_string(inst));
    CHECK(back.network() == inst.network());
    CHECK(back.job_locations() == inst.job_locations());
    CHECK(back.machine_count() == inst.machine_count());
    CHECK(to_string(back) == to_string(inst));

    const CompactInstance ci = compact_of(inst);
    const CompactInstance cback = parse_compact(to_string(ci));
    CHECK(cback.jobs_per_vertex == ci.jobs_per_vertex);
    CHECK(to_string(cback) == to_string(ci));
  }
}

TEST_CASE("serializer layout") {
  const Instance inst(Network(2, {{0, 1, 3}}, 0), 2, {0, 1, 1});
  CHECK(to_string(inst) == "ROSUET standard\n2 2 3\ndepot 1\n1\n1 2 3\n1 2 2\n");
  CHECK(to_string(compact_of(inst)) == "ROSUET compact\n2 2\ndepot 1\n1\n1 2 3\n1 2\n");
}

TEST_CASE("expanding compact counts") {
  const Network two(2, {{0, 1, 1}}, 0);
  CHECK(expand_compact(CompactInstance(two, 1, {1, 2})).job_locations() == std::vector<int>{0, 1, 1});
  CHECK(expand_compact(CompactInstance(two, 1, {0, 0})).job_count() == 0);
  CHECK(expand_compact(CompactInstance(Network(1, {}, 0), 2, {3})).job_locations() ==
        std::vector<int>{0, 0, 0});
}

TEST_CASE("metric closure of a path") {
  const Network closed = metric_closure(Network(3, {{0, 1, 1}, {1, 2, 1}}, 0));
  CHECK(closed.is_complete());
  CHECK(closed.is_metric());
  CHECK(closed.weight(0, 2) == 2);
}

TEST_CASE("metric closure is a fixed point on metric networks") {
  const Network tri(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 3}}, 0);
  CHECK(tri.is_metric());
  CHECK(metric_closure(tri) == tri);
}

TEST_CASE("metric closure of a heavy cycle matches relaxation") {
  const Network cyc(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 5}}, 0);
  const Network closed = metric_closure(cyc);
  CHECK(closed.weights() == relaxation_distances(cyc));
  CHECK(closed.weight(0, 3) == 3);
}

TEST_CASE("metric closure matches relaxation on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Network net = random_connected(rng, static_cast<int>(uniform_int(rng, 1, 7)), 10);
    const Network closed = metric_closure(net);
    REQUIRE(closed.is_metric());
    TimeMatrix expected = relaxation_distances(net);
    CHECK(closed.weights() == expected);
  }
}

TEST_CASE("trimming drops jobless non-depot vertices") {
  const Instance inst(metric_closure(Network(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}}, 0)), 2,
                      {3, 1, 3});
  CHECK_FALSE(inst.is_trimmed());
  const TrimResult t = trim_empty_vertices(inst);
  CHECK(t.instance.is_trimmed());
  CHECK(t.instance.vertex_count() == 3);
  CHECK(t.new_to_old == std::vector<int>{0, 1, 3});
  CHECK(t.old_to_new == std::vector<int>{0, 1, -1, 2});
  CHECK(t.instance.job_locations() == std::vector<int>{2, 1, 2});
  CHECK(t.instance.travel(1, 2) == 3);
}

TEST_CASE("depot survives trimming without jobs") {
  const Instance inst(Network(2, {{0, 1, 2}}, 0), 1, {1});
  const TrimResult t = trim_empty_vertices(inst);
  CHECK(t.instance.vertex_count() == 2);
  const Instance empty(Network(2, {{0, 1, 2}}, 0), 1, {});
  CHECK(trim_empty_vertices(empty).instance.vertex_count() == 1);
}

TEST_CASE("trimming needs a metric instance") {
  const Instance inst(Network(3, {{0, 1, 1}, {1, 2, 1}}, 0), 1, {2});
  CHECK_FALSE(inst.is_metric());
  CHECK_THROWS_AS(trim_empty_vertices(inst), PreconditionError);
}

TEST_CASE("preprocessing yields metric trimmed instances") {
  for (const Instance& inst : testing::tiny_corpus(3, 1, 2, 2)) {
    const TrimResult t = preprocess(inst);
    CHECK(t.instance.is_metric());
    CHECK(t.instance.is_trimmed());
    CHECK(t.instance.job_count() == inst.job_count());
    for (int j = 0; j < inst.job_count(); ++j) {
      CHECK(t.new_to_old[t.instance.location(j)] == inst.location(j));
    }
  }
}

TEST_CASE("compact preprocessing keeps counts of hosting vertices") {
  const CompactInstance ci(Network(3, {{0, 1, 1}, {1, 2, 1}}, 0), 2, {0, 0, 3});
  const CompactTrimResult t = preprocess(ci);
  CHECK(t.instance.jobs_per_vertex == std::vector<int>{0, 3});
  CHECK(t.instance.network.weight(0, 1) == 2);
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(Network(0, {}, 0), InstanceError);
  CHECK_THROWS_AS(Network(2, {}, 0), InstanceError);
  CHECK_THROWS_AS(Network(2, {{0, 1, -1}}, 0), InstanceError);
  CHECK_THROWS_AS(Instance(Network(1, {}, 0), 0, {0}), InstanceError);
  CHECK_THROWS_AS(Instance(Network(1, {}, 0), 1, {1}), InstanceError);
}

TEST_CASE("generator is deterministic per seed") {
  GeneratorOptions o;
  o.vertices = 4;
  o.machines = 2;
  o.total_jobs = 6;
  o.max_weight = 5;
  o.seed = 99;
  CHECK(to_string(generate_instance(o)) == to_string(generate_instance(o)));
  o.seed = 100;
  const Instance other = generate_instance(o);
  CHECK(other.is_metric());
  CHECK(other.job_count() == 6);
}

TEST_CASE("checked addition") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(std::numeric_limits<Time>::max(), 1), std::overflow_error);
}
