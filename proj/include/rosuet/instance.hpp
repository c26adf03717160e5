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
#include <string>
#include <variant>
#include <vector>

#include "rosuet/types.hpp"

namespace rosuet {

struct Edge {
  int u;
  int v;
  Time weight;
};

// Weighted connected simple graph with a depot. Vertices are 0-based.
class Network {
 public:
  // Validates simplicity, connectivity, weights and the depot index.
  // Throws InstanceError.
  Network(int vertex_count, std::vector<Edge> edges, int depot);

  int vertex_count() const { return static_cast<int>(weights_.rows()); }
  int depot() const { return depot_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Symmetric g x g matrix; 0 off the diagonal means "no edge".
  const TimeMatrix& weights() const { return weights_; }
  Time weight(int u, int v) const { return weights_(u, v); }
  bool has_edge(int u, int v) const { return u != v && weights_(u, v) > 0; }

  bool is_complete() const;
  // Complete and satisfies the triangle inequality.
  bool is_metric() const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.depot_ == b.depot_ && a.weights_ == b.weights_;
  }

 private:
  TimeMatrix weights_;
  std::vector<Edge> edges_;
  int depot_;
};

// ROS-UET instance: every job takes one time unit on every machine.
class Instance {
 public:
  Instance(Network network, int machine_count, std::vector<int> job_locations);

  const Network& network() const { return network_; }
  int vertex_count() const { return network_.vertex_count(); }
  int depot() const { return network_.depot(); }
  int machine_count() const { return machine_count_; }
  int job_count() const { return static_cast<int>(job_locations_.size()); }
  const std::vector<int>& job_locations() const { return job_locations_; }
  int location(int job) const { return job_locations_[job]; }
  Time travel(int u, int v) const { return network_.weight(u, v); }

  // n_v for every vertex.
  std::vector<int> jobs_per_vertex() const;
  // Jobs located in `v`, in increasing job index.
  std::vector<int> jobs_in(int v) const;

  bool is_metric() const { return metric_; }
  // Every non-depot vertex hosts at least one job.
  bool is_trimmed() const { return trimmed_; }

 private:
  Network network_;
  int machine_count_;
  std::vector<int> job_locations_;
  bool metric_;
  bool trimmed_;
};

// Instance given by job counts per vertex only.
struct CompactInstance {
  CompactInstance(Network network, int machine_count,
                  std::vector<int> jobs_per_vertex);

  Network network;
  int machine_count;
  std::vector<int> jobs_per_vertex;

  int job_count() const;
};

enum class Encoding { kStandard, kCompact };

using AnyInstance = std::variant<Instance, CompactInstance>;

// Reads either encoding; throws ParseError (with line number) on malformed
// input, including structural violations of the network.
AnyInstance parse_instance(std::istream& in);
AnyInstance parse_instance(std::istream& in, Encoding expected);
Instance parse_standard(const std::string& text);
CompactInstance parse_compact(const std::string& text);
AnyInstance load_instance(const std::string& path);

void write_instance(std::ostream& out, const Instance& inst);
void write_instance(std::ostream& out, const CompactInstance& inst);
std::string to_string(const Instance& inst);
std::string to_string(const CompactInstance& inst);

// Jobs materialized per vertex in increasing vertex order.
Instance expand_compact(const CompactInstance& ci);
CompactInstance compact_of(const Instance& inst);

// Complete network whose weights are shortest-path distances.
Network metric_closure(const Network& net);
Instance metric_closure(const Instance& inst);
CompactInstance metric_closure(const CompactInstance& ci);

struct TrimResult {
  Instance instance;
  // new vertex index -> original vertex index
  std::vector<int> new_to_old;
  // original vertex index -> new index, or -1 when deleted
  std::vector<int> old_to_new;
};

// Deletes jobless non-depot vertices. Requires a metric instance; job indices
// are unchanged.
TrimResult trim_empty_vertices(const Instance& inst);

struct CompactTrimResult {
  CompactInstance instance;
  std::vector<int> new_to_old;
};
CompactTrimResult trim_empty_vertices(const CompactInstance& inst);

// metric_closure followed by trim_empty_vertices.
TrimResult preprocess(const Instance& inst);
CompactTrimResult preprocess(const CompactInstance& ci);

}  // namespace rosuet
