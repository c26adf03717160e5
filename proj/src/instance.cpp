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

#include "rosuet/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace rosuet {

namespace {

bool connected(const TimeMatrix& w) {
  const int g = static_cast<int>(w.rows());
  if (g == 0) return false;
  std::vector<bool> seen(g, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < g; ++v) {
      if (v != u && w(u, v) > 0 && !seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == g;
}

struct Token {
  std::string text;
  int line;
};

class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] == '#') continue;
      std::istringstream words(line);
      std::string word;
      while (words >> word) tokens_.push_back({word, number});
    }
    last_line_ = number;
  }

  bool done() const { return pos_ >= tokens_.size(); }
  int line() const { return done() ? last_line_ : tokens_[pos_].line; }
  int previous_line() const {
    return pos_ == 0 ? 1 : tokens_[pos_ - 1].line;
  }

  const Token& next(const char* what) {
    if (done()) {
      throw ParseError(last_line_, std::string("unexpected end of input, expected ") + what);
    }
    return tokens_[pos_++];
  }

  std::string word(const char* what) { return next(what).text; }

  Time integer(const char* what) {
    const Token& tok = next(what);
    Time value = 0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(tok.line, std::string("expected integer ") + what +
                                     ", got '" + tok.text + "'");
    }
    return value;
  }

  int count(const char* what, Time min_value) {
    const int line_no = line();
    const Time v = integer(what);
    if (v < min_value || v > std::numeric_limits<int>::max()) {
      throw ParseError(line_no, std::string(what) + " out of range: " + std::to_string(v));
    }
    return static_cast<int>(v);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

int vertex_index(TokenStream& ts, int g, const char* what) {
  const int line_no = ts.line();
  const Time v = ts.integer(what);
  if (v < 1 || v > g) {
    throw ParseError(line_no, std::string(what) + " " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(g));
  }
  return static_cast<int>(v - 1);
}

Network read_network(TokenStream& ts, int g) {
  if (ts.word("'depot'") != "depot") {
    throw ParseError(ts.previous_line(), "expected 'depot'");
  }
  const int depot = vertex_index(ts, g, "depot");
  const int edge_count = ts.count("edge count", 0);
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  for (int e = 0; e < edge_count; ++e) {
    const int line_no = ts.line();
    const int u = vertex_index(ts, g, "edge endpoint");
    const int v = vertex_index(ts, g, "edge endpoint");
    const Time c = ts.integer("edge weight");
    if (c < 1) {
      throw ParseError(line_no, "non-positive edge weight " + std::to_string(c));
    }
    if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u + 1));
    for (const Edge& other : edges) {
      if ((other.u == u && other.v == v) || (other.u == v && other.v == u)) {
        throw ParseError(line_no, "parallel edge " + std::to_string(u + 1) + "-" +
                                      std::to_string(v + 1));
      }
    }
    edges.push_back({u, v, c});
  }
  try {
    return Network(g, std::move(edges), depot);
  } catch (const InstanceError& e) {
    throw ParseError(ts.previous_line(), e.what());
  }
}

void expect_header(TokenStream& ts, std::string& kind) {
  const int line_no = ts.line();
  if (ts.done() || ts.word("header") != "ROSUET") {
    throw ParseError(line_no, "malformed header, expected 'ROSUET standard' or 'ROSUET compact'");
  }
  kind = ts.word("encoding");
  if (kind != "standard" && kind != "compact") {
    throw ParseError(line_no, "unknown encoding '" + kind + "'");
  }
}

void expect_end(TokenStream& ts) {
  if (!ts.done()) throw ParseError(ts.line(), "trailing data");
}

void write_network(std::ostream& out, const Network& net) {
  out << "depot " << net.depot() + 1 << '\n';
  out << net.edges().size() << '\n';
  for (const Edge& e : net.edges()) {
    out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.weight << '\n';
  }
}

template <typename T>
void write_row(std::ostream& out, const std::vector<T>& row, int offset) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ' ';
    out << row[i] + offset;
  }
  out << '\n';
}

Network complete_network(const TimeMatrix& dist, int depot) {
  const int g = static_cast<int>(dist.rows());
  std::vector<Edge> edges;
  for (int u = 0; u < g; ++u) {
    for (int v = u + 1; v < g; ++v) edges.push_back({u, v, dist(u, v)});
  }
  return Network(g, std::move(edges), depot);
}

TimeMatrix shortest_paths(const Network& net) {
  const int g = net.vertex_count();
  constexpr Time kInf = std::numeric_limits<Time>::max() / 4;
  TimeMatrix d = TimeMatrix::Constant(g, g, kInf);
  for (int v = 0; v < g; ++v) d(v, v) = 0;
  for (const Edge& e : net.edges()) {
    d(e.u, e.v) = std::min(d(e.u, e.v), e.weight);
    d(e.v, e.u) = d(e.u, e.v);
  }
  // Floyd-Warshall.
  for (int k = 0; k < g; ++k) {
    for (int i = 0; i < g; ++i) {
      if (d(i, k) >= kInf) continue;
      for (int j = 0; j < g; ++j) {
        if (d(k, j) >= kInf) continue;
        d(i, j) = std::min(d(i, j), checked_add(d(i, k), d(k, j)));
      }
    }
  }
  return d;
}

}  // namespace

Network::Network(int vertex_count, std::vector<Edge> edges, int depot)
    : edges_(std::move(edges)), depot_(depot) {
  if (vertex_count < 1) throw InstanceError("network needs at least one vertex");
  if (depot < 0 || depot >= vertex_count) throw InstanceError("depot out of range");
  weights_ = TimeMatrix::Zero(vertex_count, vertex_count);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count) {
      throw InstanceError("edge endpoint out of range");
    }
    if (e.u == e.v) throw InstanceError("self-loop");
    if (e.weight < 1) throw InstanceError("non-positive edge weight");
    if (weights_(e.u, e.v) != 0) throw InstanceError("parallel edge");
    weights_(e.u, e.v) = e.weight;
    weights_(e.v, e.u) = e.weight;
  }
  if (!connected(weights_)) throw InstanceError("graph is disconnected");
}

bool Network::is_complete() const {
  const int g = vertex_count();
  return static_cast<int>(edges_.size()) == g * (g - 1) / 2;
}

bool Network::is_metric() const {
  if (!is_complete()) return false;
  const int g = vertex_count();
  for (int u = 0; u < g; ++u) {
    for (int v = 0; v < g; ++v) {
      for (int w = 0; w < g; ++w) {
        if (weights_(u, w) > weights_(u, v) + weights_(v, w)) return false;
      }
    }
  }
  return true;
}

Instance::Instance(Network network, int machine_count, std::vector<int> job_locations)
    : network_(std::move(network)),
      machine_count_(machine_count),
      job_locations_(std::move(job_locations)) {
  if (machine_count_ < 1) throw InstanceError("need at least one machine");
  for (int loc : job_locations_) {
    if (loc < 0 || loc >= network_.vertex_count()) {
      throw InstanceError("job location out of range");
    }
  }
  metric_ = network_.is_metric();
  const auto counts = jobs_per_vertex();
  trimmed_ = true;
  for (int v = 0; v < vertex_count(); ++v) {
    if (v != depot() && counts[v] == 0) trimmed_ = false;
  }
}

std::vector<int> Instance::jobs_per_vertex() const {
  std::vector<int> counts(vertex_count(), 0);
  for (int loc : job_locations_) ++counts[loc];
  return counts;
}

std::vector<int> Instance::jobs_in(int v) const {
  std::vector<int> out;
  for (int j = 0; j < job_count(); ++j) {
    if (job_locations_[j] == v) out.push_back(j);
  }
  return out;
}

CompactInstance::CompactInstance(Network net, int machines, std::vector<int> counts)
    : network(std::move(net)), machine_count(machines), jobs_per_vertex(std::move(counts)) {
  if (machine_count < 1) throw InstanceError("need at least one machine");
  if (static_cast<int>(jobs_per_vertex.size()) != network.vertex_count()) {
    throw InstanceError("need one job count per vertex");
  }
  for (int c : jobs_per_vertex) {
    if (c < 0) throw InstanceError("negative job count");
  }
}

int CompactInstance::job_count() const {
  return std::accumulate(jobs_per_vertex.begin(), jobs_per_vertex.end(), 0);
}

AnyInstance parse_instance(std::istream& in) {
  TokenStream ts(in);
  std::string kind;
  expect_header(ts, kind);
  if (kind == "standard") {
    const int g = ts.count("vertex count", 1);
    const int m = ts.count("machine count", 1);
    const int n = ts.count("job count", 0);
    Network net = read_network(ts, g);
    std::vector<int> locs;
    locs.reserve(n);
    for (int i = 0; i < n; ++i) locs.push_back(vertex_index(ts, g, "job location"));
    expect_end(ts);
    return Instance(std::move(net), m, std::move(locs));
  }
  const int g = ts.count("vertex count", 1);
  const int m = ts.count("machine count", 1);
  Network net = read_network(ts, g);
  std::vector<int> counts;
  counts.reserve(g);
  for (int v = 0; v < g; ++v) counts.push_back(ts.count("job count", 0));
  expect_end(ts);
  return CompactInstance(std::move(net), m, std::move(counts));
}

AnyInstance parse_instance(std::istream& in, Encoding expected) {
  AnyInstance any = parse_instance(in);
  const bool is_compact = std::holds_alternative<CompactInstance>(any);
  if (is_compact != (expected == Encoding::kCompact)) {
    throw ParseError(1, is_compact ? "expected standard encoding" : "expected compact encoding");
  }
  return any;
}

Instance parse_standard(const std::string& text) {
  std::istringstream in(text);
  return std::get<Instance>(parse_instance(in, Encoding::kStandard));
}

CompactInstance parse_compact(const std::string& text) {
  std::istringstream in(text);
  return std::get<CompactInstance>(parse_instance(in, Encoding::kCompact));
}

AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << "ROSUET standard\n";
  out << inst.vertex_count() << ' ' << inst.machine_count() << ' ' << inst.job_count() << '\n';
  write_network(out, inst.network());
  write_row(out, inst.job_locations(), 1);
}

void write_instance(std::ostream& out, const CompactInstance& inst) {
  out << "ROSUET compact\n";
  out << inst.network.vertex_count() << ' ' << inst.machine_count << '\n';
  write_network(out, inst.network);
  write_row(out, inst.jobs_per_vertex, 0);
}

std::string to_string(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

std::string to_string(const CompactInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

Instance expand_compact(const CompactInstance& ci) {
  std::vector<int> locs;
  locs.reserve(ci.job_count());
  for (int v = 0; v < ci.network.vertex_count(); ++v) {
    locs.insert(locs.end(), ci.jobs_per_vertex[v], v);
  }
  return Instance(ci.network, ci.machine_count, std::move(locs));
}

CompactInstance compact_of(const Instance& inst) {
  return CompactInstance(inst.network(), inst.machine_count(), inst.jobs_per_vertex());
}

Network metric_closure(const Network& net) {
  return complete_network(shortest_paths(net), net.depot());
}

Instance metric_closure(const Instance& inst) {
  return Instance(metric_closure(inst.network()), inst.machine_count(), inst.job_locations());
}

namespace {

// Keeps the depot and every vertex with a job; returns new->old.
std::vector<int> kept_vertices(const std::vector<int>& counts, int depot) {
  std::vector<int> kept;
  for (int v = 0; v < static_cast<int>(counts.size()); ++v) {
    if (v == depot || counts[v] > 0) kept.push_back(v);
  }
  return kept;
}

Network induced(const Network& net, const std::vector<int>& new_to_old,
                const std::vector<int>& old_to_new) {
  std::vector<Edge> edges;
  for (const Edge& e : net.edges()) {
    if (old_to_new[e.u] >= 0 && old_to_new[e.v] >= 0) {
      edges.push_back({old_to_new[e.u], old_to_new[e.v], e.weight});
    }
  }
  return Network(static_cast<int>(new_to_old.size()), std::move(edges),
                 old_to_new[net.depot()]);
}

}  // namespace

TrimResult trim_empty_vertices(const Instance& inst) {
  if (!inst.is_metric()) {
    throw PreconditionError("trim_empty_vertices requires a metric instance");
  }
  const int g = inst.vertex_count();
  std::vector<int> new_to_old = kept_vertices(inst.jobs_per_vertex(), inst.depot());
  std::vector<int> old_to_new(g, -1);
  for (int i = 0; i < static_cast<int>(new_to_old.size()); ++i) old_to_new[new_to_old[i]] = i;
  std::vector<int> locs = inst.job_locations();
  for (int& loc : locs) loc = old_to_new[loc];
  Instance trimmed(induced(inst.network(), new_to_old, old_to_new), inst.machine_count(),
                   std::move(locs));
  return {std::move(trimmed), std::move(new_to_old), std::move(old_to_new)};
}

CompactTrimResult trim_empty_vertices(const CompactInstance& inst) {
  if (!inst.network.is_metric()) {
    throw PreconditionError("trim_empty_vertices requires a metric instance");
  }
  std::vector<int> new_to_old = kept_vertices(inst.jobs_per_vertex, inst.network.depot());
  std::vector<int> old_to_new(inst.network.vertex_count(), -1);
  std::vector<int> counts;
  for (int i = 0; i < static_cast<int>(new_to_old.size()); ++i) {
    old_to_new[new_to_old[i]] = i;
    counts.push_back(inst.jobs_per_vertex[new_to_old[i]]);
  }
  return {CompactInstance(induced(inst.network, new_to_old, old_to_new), inst.machine_count,
                          std::move(counts)),
          std::move(new_to_old)};
}

TrimResult preprocess(const Instance& inst) {
  return trim_empty_vertices(metric_closure(inst));
}

CompactInstance metric_closure(const CompactInstance& ci) {
  return CompactInstance(metric_closure(ci.network), ci.machine_count, ci.jobs_per_vertex);
}

CompactTrimResult preprocess(const CompactInstance& ci) {
  return trim_empty_vertices(metric_closure(ci));
}

}  // namespace rosuet
