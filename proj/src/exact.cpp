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

#include "rosuet/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "rosuet/graph.hpp"
#include "rosuet/heuristics.hpp"

namespace rosuet {

std::vector<int> PreSchedule::critical_indices() const {
  std::vector<int> k;
  for (int i = 0; i < size(); ++i) {
    if (in_k(i)) k.push_back(i);
  }
  return k;
}

std::vector<int> PreSchedule::sigma() const {
  std::vector<int> seen;
  std::vector<int> out(stays.size());
  for (std::size_t k = 0; k < stays.size(); ++k) {
    const int q = stays[k].machine;
    if (q >= static_cast<int>(seen.size())) seen.resize(q + 1, 0);
    out[k] = seen[q]++;
  }
  return out;
}

int stay_budget(int machines, int vertices) { return machines + 2 * vertices - 2; }

std::vector<bool> critical_vertices(const Instance& inst) {
  const auto counts = inst.jobs_per_vertex();
  std::vector<bool> out(counts.size());
  for (std::size_t v = 0; v < counts.size(); ++v) out[v] = counts[v] < inst.machine_count();
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

void require_prepared(const Network& net, const std::vector<int>& counts, const char* who) {
  if (!net.is_metric()) throw PreconditionError(std::string(who) + " requires a metric instance");
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (v != net.depot() && counts[v] == 0) {
      throw PreconditionError(std::string(who) + " requires a trimmed instance");
    }
  }
}

void require_prepared(const Instance& inst, const char* who) {
  require_prepared(inst.network(), inst.jobs_per_vertex(), who);
}

// Everything the route search needs; built from job counts only.
struct Model {
  int g = 0;
  int m = 0;
  int depot = 0;
  int n = 0;
  int budget = 0;
  TimeMatrix dist;
  std::vector<int> count;
  std::vector<int> cap;  // n_v + m - 1: most time one machine spends in v
  std::vector<char> critical;
};

Model make_model(const Network& net, int machines, const std::vector<int>& counts) {
  Model model;
  model.g = net.vertex_count();
  model.m = machines;
  model.depot = net.depot();
  model.n = std::accumulate(counts.begin(), counts.end(), 0);
  model.budget = stay_budget(machines, model.g);
  model.dist = net.weights();
  model.count = counts;
  for (int v = 0; v < model.g; ++v) {
    model.cap.push_back(counts[v] + machines - 1);
    model.critical.push_back(counts[v] < machines ? 1 : 0);
  }
  return model;
}

// First `limit` time units machine route spends in every vertex.
std::vector<std::vector<Time>> unit_slots(const Route& route, int g, std::size_t limit) {
  std::vector<std::vector<Time>> slots(g);
  for (const Stay& st : route.stays) {
    auto& list = slots[st.vertex];
    for (Time t = st.arrival; t < st.departure && list.size() < limit; ++t) list.push_back(t);
  }
  return slots;
}

// Depth-first assignment of critical (job, machine) start times.
class CriticalAssignment {
 public:
  CriticalAssignment(const std::vector<int>& job_vertex, int m, const Routes& routes, int g,
                     std::function<bool()> interrupted = {})
      : job_vertex_(job_vertex), m_(m), interrupted_(std::move(interrupted)) {
    const std::size_t limit = static_cast<std::size_t>(2 * m - 1);
    for (const Route& r : routes) slots_.push_back(unit_slots(r, g, limit));
    times_.assign(job_vertex.size(), std::vector<Time>(m, kUnset));
  }

  std::optional<std::vector<std::vector<Time>>> solve() {
    if (assign(0) && !aborted_) return times_;
    return std::nullopt;
  }

  bool aborted() const { return aborted_; }

 private:
  bool assign(std::size_t index) {
    const std::size_t jobs = job_vertex_.size();
    if (index == jobs * m_) return true;
    if (interrupted_ && (++nodes_ & 4095) == 0 && interrupted_()) aborted_ = true;
    if (aborted_) return true;
    const std::size_t j = index / m_;
    const int q = static_cast<int>(index % m_);
    for (Time t : slots_[q][job_vertex_[j]]) {
      if (clashes(j, q, t)) continue;
      times_[j][q] = t;
      if (assign(index + 1)) return true;
      times_[j][q] = kUnset;
    }
    return false;
  }

  bool clashes(std::size_t j, int q, Time t) const {
    for (std::size_t other = 0; other < j; ++other) {
      if (times_[other][q] == t) return true;
    }
    for (int r = 0; r < q; ++r) {
      if (times_[j][r] == t) return true;
    }
    return false;
  }

  const std::vector<int>& job_vertex_;
  int m_;
  std::function<bool()> interrupted_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::vector<std::vector<Time>>> slots_;
  std::vector<std::vector<Time>> times_;
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// State shared by the workers searching one target makespan.
struct SearchShared {
  std::mutex mu;
  std::unordered_set<std::vector<int>, VectorHash> seen;
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  std::atomic<std::uint64_t>* examined = nullptr;
  std::uint64_t max_preschedules = 0;
  std::optional<Clock::time_point> deadline;

  bool success = false;
  Routes routes;
  std::vector<std::vector<Time>> critical_times;
};

struct Move {
  int machine;  // -1: every machine ends its route with the current depot stay
  int length;
  int target;
};

// Chronological route search for one target L. Pre-stays are appended in
// order of arrival (ties by machine index), so every collection of routes
// is generated exactly once together with the pre-schedule it complies with.
// Leaves are deduplicated by pre-schedule; each new pre-schedule gets one
// critical-schedule search on the routes that produced it.
class ChronoSearch {
 public:
  ChronoSearch(const Model& model, Time target, const std::vector<int>& critical_job_vertex,
               SearchShared& shared)
      : model_(model), target_(target), critical_job_vertex_(critical_job_vertex),
        shared_(shared) {
    machines_.resize(model.m);
    for (int q = 0; q < model.m; ++q) {
      Machine& st = machines_[q];
      st.vertex = model.depot;
      st.arrival = 0;
      st.stayed.assign(model.g, 0);
      st.records.push_back(static_cast<int>(records_.size()));
      records_.push_back({q, model.depot, 0, -1});
    }
    buffers_.resize(static_cast<std::size_t>(model.m) * model.budget + 2);
  }

  std::vector<Move> root_moves() {
    std::vector<Move> moves;
    collect_moves(moves);
    return moves;
  }

  void run(const Move& move) {
    if (shared_.stop) return;
    if (move.machine < 0) {
      terminate();
      return;
    }
    apply(move);
    dfs(1);
    undo(move);
  }

 private:
  struct Record {
    int machine;
    int vertex;
    Time arrival;
    Time length;  // -1 while the stay is open
  };

  struct Machine {
    int vertex;
    Time arrival;
    std::vector<int> stayed;   // closed stay time per vertex
    std::vector<int> records;  // indices into records_
    Time first_departure = -1;
  };

  int need(const Machine& st, int v, int extra) const {
    return std::max(0, model_.count[v] - st.stayed[v] - extra);
  }

  int stay_cap(const Machine& st) const {
    int cap = model_.cap[st.vertex] - st.stayed[st.vertex];
    if (model_.critical[st.vertex]) cap = std::min(cap, 2 * model_.m - 1);
    return cap;
  }

  enum class Verdict { kAccept, kSkip, kStop };

  // kSkip: this length fails but a longer one may not. kStop: every longer
  // closing length fails too, since the bound grows with the arrival time.
  Verdict admissible(int q, int length, int w, Time arrival) const {
    const Machine& st = machines_[q];
    const int v = st.vertex;
    const int depot = model_.depot;
    Time pending = 0;
    Time travel = model_.dist(w, depot);
    int far_vertices = 0;
    for (int u = 0; u < model_.g; ++u) {
      const int left = need(st, u, u == v ? length : 0);
      if (left == 0) continue;
      pending += left;
      if (u != w) travel = std::max(travel, model_.dist(w, u) + model_.dist(u, depot));
      if (u != w && u != depot) ++far_vertices;
    }
    if (arrival + pending + travel > target_) return Verdict::kSkip;
    const int closing = (w != depot || far_vertices > 0) ? 1 : 0;
    if (static_cast<int>(st.records.size()) + 1 + far_vertices + closing > model_.budget) {
      return Verdict::kSkip;
    }
    // Every other machine that still has to move arrives somewhere at or
    // after `arrival`.
    for (int r = 0; r < model_.m; ++r) {
      if (r == q) continue;
      const Machine& other = machines_[r];
      Time elsewhere = 0;
      for (int u = 0; u < model_.g; ++u) {
        if (u != other.vertex) elsewhere += need(other, u, 0);
      }
      if (other.vertex == depot && elsewhere == 0) continue;
      if (arrival + elsewhere > target_) return Verdict::kStop;
      Time longest = 0;
      for (int u = 0; u < model_.g; ++u) longest = std::max(longest, model_.dist(other.vertex, u));
      if (arrival - other.arrival - longest > stay_cap(other)) return Verdict::kStop;
    }
    return Verdict::kAccept;
  }

  void collect_moves(std::vector<Move>& out) const {
    out.clear();
    const int depot = model_.depot;
    const bool all_home = std::all_of(machines_.begin(), machines_.end(),
                                      [&](const Machine& st) { return st.vertex == depot; });
    if (all_home) out.push_back({-1, 0, -1});
    const Record& last = records_.back();
    for (int q = 0; q < model_.m; ++q) {
      const Machine& st = machines_[q];
      if (static_cast<int>(st.records.size()) >= model_.budget) continue;
      Time cap = stay_cap(st);
      Time floor = 0;
      // Machines are interchangeable: first departures from the depot are
      // taken in machine order.
      if (st.records.size() == 1) {
        if (q > 0) floor = std::max<Time>(floor, machines_[q - 1].first_departure);
        if (q + 1 < model_.m && machines_[q + 1].first_departure >= 0) {
          cap = std::min(cap, machines_[q + 1].first_departure);
        }
      }
      for (int w = 0; w < model_.g; ++w) {
        if (w == st.vertex) continue;
        const Time travel = model_.dist(st.vertex, w);
        Time lmin = std::max<Time>(floor, last.arrival - st.arrival - travel);
        if (st.arrival + lmin + travel == last.arrival && q < last.machine) ++lmin;
        for (Time l = lmin; l <= cap; ++l) {
          const Time arrival = st.arrival + l + travel;
          if (arrival > target_) break;
          const Verdict verdict = admissible(q, static_cast<int>(l), w, arrival);
          if (verdict == Verdict::kStop) break;
          if (verdict == Verdict::kAccept) out.push_back({q, static_cast<int>(l), w});
        }
      }
    }
  }

  void apply(const Move& mv) {
    Machine& st = machines_[mv.machine];
    if (st.records.size() == 1) st.first_departure = mv.length;
    records_[st.records.back()].length = mv.length;
    st.stayed[st.vertex] += mv.length;
    const Time arrival = st.arrival + mv.length + model_.dist(st.vertex, mv.target);
    st.records.push_back(static_cast<int>(records_.size()));
    records_.push_back({mv.machine, mv.target, arrival, -1});
    st.vertex = mv.target;
    st.arrival = arrival;
  }

  void undo(const Move& mv) {
    Machine& st = machines_[mv.machine];
    records_.pop_back();
    st.records.pop_back();
    Record& prev = records_[st.records.back()];
    st.vertex = prev.vertex;
    st.arrival = prev.arrival;
    st.stayed[st.vertex] -= mv.length;
    prev.length = -1;
    if (st.records.size() == 1) st.first_departure = -1;
  }

  bool out_of_time() {
    if (!shared_.deadline || (++nodes_ & 1023) != 0) return false;
    if (Clock::now() < *shared_.deadline) return false;
    shared_.exhausted = true;
    shared_.stop = true;
    return true;
  }

  bool dfs(std::size_t depth) {
    if (shared_.stop || out_of_time()) return true;
    auto& moves = buffers_[depth];
    collect_moves(moves);
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Move mv = moves[i];
      if (mv.machine < 0) {
        if (terminate()) return true;
        continue;
      }
      apply(mv);
      const bool done = dfs(depth + 1);
      undo(mv);
      if (done) return true;
    }
    return false;
  }

  // All machines end at the depot now; choose the final stay lengths.
  bool terminate() {
    const int depot = model_.depot;
    std::vector<std::pair<Time, Time>> ranges;
    for (const Machine& st : machines_) {
      for (int u = 0; u < model_.g; ++u) {
        if (u != depot && need(st, u, 0) > 0) return false;
      }
      const Time lo = need(st, depot, 0);
      Time hi = std::min<Time>(model_.cap[depot] - st.stayed[depot], target_ - st.arrival);
      if (model_.critical[depot]) {
        hi = std::min<Time>(hi, 2 * model_.m - 1);
      } else {
        hi = std::min(hi, lo);
      }
      if (lo > hi) return false;
      ranges.emplace_back(lo, hi);
    }
    std::vector<Time> lengths(model_.m);
    return choose_final(0, ranges, lengths);
  }

  bool choose_final(int q, const std::vector<std::pair<Time, Time>>& ranges,
                    std::vector<Time>& lengths) {
    if (q == model_.m) return leaf(lengths);
    for (Time l = ranges[q].first; l <= ranges[q].second; ++l) {
      lengths[q] = l;
      if (choose_final(q + 1, ranges, lengths)) return true;
      if (shared_.stop) return true;
    }
    return false;
  }

  bool leaf(const std::vector<Time>& final_lengths) {
    for (int q = 0; q < model_.m; ++q) {
      records_[machines_[q].records.back()].length = final_lengths[q];
    }
    std::vector<int> signature;
    signature.reserve(records_.size() * 3);
    Time previous_k_arrival = -1;
    const Time cap_d = 2 * model_.m;
    for (const Record& r : records_) {
      signature.push_back(r.machine * model_.g + r.vertex);
      if (!model_.critical[r.vertex]) continue;
      signature.push_back(static_cast<int>(r.length));
      const Time d = previous_k_arrival < 0 ? 0 : std::min(r.arrival - previous_k_arrival, cap_d);
      signature.push_back(static_cast<int>(d));
      previous_k_arrival = r.arrival;
    }
    bool fresh;
    {
      std::lock_guard<std::mutex> lock(shared_.mu);
      fresh = shared_.seen.insert(std::move(signature)).second;
    }
    bool stop = false;
    if (fresh) stop = examine();
    for (int q = 0; q < model_.m; ++q) records_[machines_[q].records.back()].length = -1;
    return stop;
  }

  bool examine() {
    const std::uint64_t count = ++*shared_.examined;
    if (shared_.max_preschedules && count > shared_.max_preschedules) {
      shared_.exhausted = true;
      shared_.stop = true;
      return true;
    }
    Routes routes(model_.m);
    for (int q = 0; q < model_.m; ++q) {
      for (int idx : machines_[q].records) {
        const Record& r = records_[idx];
        routes[q].stays.push_back({r.arrival, r.vertex, r.arrival + r.length});
      }
    }
    CriticalAssignment assignment(critical_job_vertex_, model_.m, routes, model_.g, [this] {
      if (shared_.stop) return true;
      if (shared_.deadline && Clock::now() >= *shared_.deadline) {
        shared_.exhausted = true;
        shared_.stop = true;
        return true;
      }
      return false;
    });
    auto times = assignment.solve();
    if (assignment.aborted()) return true;
    if (!times) return false;
    std::lock_guard<std::mutex> lock(shared_.mu);
    if (!shared_.success) {
      shared_.success = true;
      shared_.routes = std::move(routes);
      shared_.critical_times = std::move(*times);
    }
    shared_.stop = true;
    return true;
  }

  const Model& model_;
  Time target_;
  const std::vector<int>& critical_job_vertex_;
  SearchShared& shared_;
  std::vector<Machine> machines_;
  std::vector<Record> records_;
  std::vector<std::vector<Move>> buffers_;
  std::uint64_t nodes_ = 0;
};

enum class TargetOutcome { kFound, kRefuted, kExhausted };

struct TargetResult {
  TargetOutcome outcome;
  Routes routes;
  std::vector<std::vector<Time>> critical_times;
};

TargetResult search_target(const Model& model, Time target,
                           const std::vector<int>& critical_job_vertex,
                           const ExactOptions& options, std::atomic<std::uint64_t>& examined,
                           std::optional<Clock::time_point> deadline) {
  SearchShared shared;
  shared.examined = &examined;
  shared.max_preschedules = options.max_preschedules;
  shared.deadline = deadline;

  ChronoSearch root(model, target, critical_job_vertex, shared);
  const std::vector<Move> moves = root.root_moves();
  const int workers = std::max(1, options.workers);
  if (workers == 1 || moves.size() < 2) {
    for (const Move& mv : moves) {
      if (shared.stop) break;
      root.run(mv);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        ChronoSearch search(model, target, critical_job_vertex, shared);
        for (std::size_t i = next++; i < moves.size() && !shared.stop; i = next++) {
          search.run(moves[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  if (shared.success) {
    return {TargetOutcome::kFound, std::move(shared.routes), std::move(shared.critical_times)};
  }
  return {shared.exhausted ? TargetOutcome::kExhausted : TargetOutcome::kRefuted, {}, {}};
}

std::optional<Clock::time_point> deadline_for(const ExactOptions& options) {
  if (options.timeout_seconds <= 0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(options.timeout_seconds));
}

struct Incumbent {
  Schedule schedule;
  Time makespan;
};

Incumbent best_constructive(const Instance& inst, const HamiltonianCycle& h) {
  Incumbent best{sequential_schedule(inst, h), 0};
  best.makespan = makespan(inst, best.schedule);
  Schedule dbl = double_cycle_schedule(inst, h);
  const Time dbl_makespan = makespan(inst, dbl);
  if (dbl_makespan < best.makespan) best = {std::move(dbl), dbl_makespan};
  return best;
}

}  // namespace

std::optional<Schedule> critical_schedule_search(const Instance& inst, const Routes& routes) {
  if (static_cast<int>(routes.size()) != inst.machine_count()) {
    throw PreconditionError("one route per machine required");
  }
  const auto critical = critical_vertices(inst);
  std::vector<int> jobs;
  std::vector<int> job_vertex;
  for (int i = 0; i < inst.job_count(); ++i) {
    if (critical[inst.location(i)]) {
      jobs.push_back(i);
      job_vertex.push_back(inst.location(i));
    }
  }
  CriticalAssignment assignment(job_vertex, inst.machine_count(), routes, inst.vertex_count());
  auto times = assignment.solve();
  if (!times) return std::nullopt;
  Schedule s(inst.job_count(), inst.machine_count());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (int q = 0; q < inst.machine_count(); ++q) s(jobs[j], q) = (*times)[j][q];
  }
  return s;
}

Schedule complete_schedule(const Instance& inst, const Routes& routes, const Schedule& critical) {
  const int m = inst.machine_count();
  if (static_cast<int>(routes.size()) != m) throw PreconditionError("one route per machine required");
  const auto is_critical = critical_vertices(inst);
  Schedule s(inst.job_count(), m);
  for (int i = 0; i < inst.job_count(); ++i) {
    if (!is_critical[inst.location(i)]) continue;
    for (int q = 0; q < m; ++q) {
      if (critical(i, q) == kUnset) {
        throw PreconditionError("critical schedule misses job " + std::to_string(i + 1));
      }
      s(i, q) = critical(i, q);
    }
  }

  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (is_critical[v]) continue;
    const auto jobs = inst.jobs_in(v);
    const std::size_t nv = jobs.size();
    if (nv == 0) continue;
    BipartiteGraph bg;
    bg.left_count = m;
    std::vector<Time> slot_times;
    std::vector<std::pair<int, Time>> raw;
    for (int q = 0; q < m; ++q) {
      const auto slots = unit_slots(routes[q], inst.vertex_count(), nv)[v];
      if (slots.size() < nv) {
        throw PreconditionError("machine " + std::to_string(q + 1) + " stays less than n_v in vertex " +
                                std::to_string(v + 1));
      }
      for (Time t : slots) {
        raw.emplace_back(q, t);
        slot_times.push_back(t);
      }
    }
    std::sort(slot_times.begin(), slot_times.end());
    slot_times.erase(std::unique(slot_times.begin(), slot_times.end()), slot_times.end());
    bg.right_count = static_cast<int>(slot_times.size());
    for (const auto& [q, t] : raw) {
      const int right = static_cast<int>(
          std::lower_bound(slot_times.begin(), slot_times.end(), t) - slot_times.begin());
      bg.edges.emplace_back(q, right);
    }
    const auto colors = edge_color_bipartite(bg);
    for (std::size_t e = 0; e < raw.size(); ++e) s(jobs[colors[e]], raw[e].first) = raw[e].second;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Literal pre-schedule enumeration.

namespace {

class PreScheduleEnumerator {
 public:
  PreScheduleEnumerator(const Instance& inst, const std::function<bool(const PreSchedule&)>& visit)
      : visit_(visit),
        g_(inst.vertex_count()),
        m_(inst.machine_count()),
        depot_(inst.depot()),
        budget_(stay_budget(inst.machine_count(), inst.vertex_count())),
        counts_(inst.jobs_per_vertex()),
        critical_(critical_vertices(inst)) {
    count_.assign(m_, 0);
    last_.assign(m_, -1);
    visits_.assign(m_, std::vector<int>(g_, 0));
  }

  std::uint64_t run() {
    const int most = m_ * budget_;
    for (int s = m_; s <= most && !stop_; ++s) sequence(s);
    return visited_;
  }

 private:
  int missing(int q) const {
    int unvisited = 0;
    for (int v = 0; v < g_; ++v) {
      if (v != depot_ && counts_[v] > 0 && visits_[q][v] == 0) ++unvisited;
    }
    if (count_[q] == 0) return 1 + unvisited + (unvisited > 0 ? 1 : 0);
    return unvisited + ((last_[q] != depot_ || unvisited > 0) ? 1 : 0);
  }

  void sequence(int s) {
    if (stop_) return;
    const int pos = static_cast<int>(seq_.size());
    int required = 0;
    for (int q = 0; q < m_; ++q) required += missing(q);
    if (required > s - pos) return;
    if (pos == s) {
      if (required == 0) lengths();
      return;
    }
    for (int q = 0; q < m_; ++q) {
      if (count_[q] >= budget_) continue;
      for (int w = 0; w < g_; ++w) {
        if (count_[q] == 0 && w != depot_) continue;
        if (count_[q] > 0 && last_[q] == w) continue;
        const int prev = last_[q];
        seq_.push_back({q, w});
        ++count_[q];
        last_[q] = w;
        ++visits_[q][w];
        sequence(s);
        --visits_[q][w];
        last_[q] = prev;
        --count_[q];
        seq_.pop_back();
        if (stop_) return;
      }
    }
  }

  void lengths() {
    current_.stays = seq_;
    current_.length.assign(seq_.size(), -1);
    current_.displacement.assign(seq_.size(), -1);
    k_.clear();
    for (int k = 0; k < static_cast<int>(seq_.size()); ++k) {
      if (critical_[seq_[k].vertex]) k_.push_back(k);
    }
    assign_length(0);
  }

  void assign_length(std::size_t i) {
    if (stop_) return;
    if (i == k_.size()) {
      // Each machine's critical stays in v must leave room for its n_v jobs.
      std::vector<std::vector<int>> total(m_, std::vector<int>(g_, 0));
      for (int k : k_) total[seq_[k].machine][seq_[k].vertex] += current_.length[k];
      for (int q = 0; q < m_; ++q) {
        for (int v = 0; v < g_; ++v) {
          if (critical_[v] && total[q][v] < counts_[v]) return;
        }
      }
      assign_displacement(0);
      return;
    }
    for (int a = 0; a < 2 * m_ && !stop_; ++a) {
      current_.length[k_[i]] = a;
      assign_length(i + 1);
    }
    current_.length[k_[i]] = -1;
  }

  void assign_displacement(std::size_t i) {
    if (stop_) return;
    if (i == k_.size()) {
      ++visited_;
      if (!visit_(current_)) stop_ = true;
      return;
    }
    if (i == 0) {
      current_.displacement[k_[0]] = 0;
      assign_displacement(1);
      return;
    }
    for (int d = 0; d <= 2 * m_ && !stop_; ++d) {
      current_.displacement[k_[i]] = d;
      assign_displacement(i + 1);
    }
  }

  const std::function<bool(const PreSchedule&)>& visit_;
  int g_, m_, depot_, budget_;
  std::vector<int> counts_;
  std::vector<bool> critical_;
  std::vector<PreStay> seq_;
  std::vector<int> count_, last_;
  std::vector<std::vector<int>> visits_;
  std::vector<int> k_;
  PreSchedule current_;
  std::uint64_t visited_ = 0;
  bool stop_ = false;
};

// Depth-first search over non-critical stay lengths in pre-stay order.
class TimingSearch {
 public:
  TimingSearch(const Instance& inst, const PreSchedule& p, Time target)
      : inst_(inst), p_(p), target_(target), m_(inst.machine_count()), g_(inst.vertex_count()),
        counts_(inst.jobs_per_vertex()), critical_(critical_vertices(inst)) {}

  std::optional<Routes> solve() {
    const int s = p_.size();
    if (static_cast<int>(p_.length.size()) != s || static_cast<int>(p_.displacement.size()) != s) {
      throw PreconditionError("pre-schedule components have inconsistent sizes");
    }
    per_machine_.assign(m_, {});
    for (int k = 0; k < s; ++k) {
      const auto& ps = p_.stays[k];
      if (ps.machine < 0 || ps.machine >= m_ || ps.vertex < 0 || ps.vertex >= g_) {
        throw PreconditionError("pre-stay out of range");
      }
      if (critical_[ps.vertex] != p_.in_k(k)) {
        throw PreconditionError("length assignment must cover exactly the critical pre-stays");
      }
      per_machine_[ps.machine].push_back(k);
    }
    const int depot = inst_.depot();
    for (int q = 0; q < m_; ++q) {
      const auto& ks = per_machine_[q];
      if (ks.empty()) return std::nullopt;
      if (p_.stays[ks.front()].vertex != depot || p_.stays[ks.back()].vertex != depot) {
        return std::nullopt;
      }
      for (std::size_t i = 1; i < ks.size(); ++i) {
        if (p_.stays[ks[i - 1]].vertex == p_.stays[ks[i]].vertex) return std::nullopt;
      }
    }
    sigma_ = p_.sigma();
    previous_k_.assign(s, -1);
    int prev = -1;
    for (int k = 0; k < s; ++k) {
      if (!p_.in_k(k)) continue;
      previous_k_[k] = prev;
      prev = k;
    }
    arrival_.assign(s, 0);
    length_.assign(s, -1);
    stayed_.assign(m_, std::vector<int>(g_, 0));
    if (place(0)) return routes_;
    return std::nullopt;
  }

 private:
  bool displacement_ok(int k, Time arrival) const {
    if (!p_.in_k(k) || previous_k_[k] < 0) return true;
    const Time base = arrival_[previous_k_[k]];
    const int d = p_.displacement[k];
    if (d < 2 * m_) return arrival == base + d;
    return arrival >= base + 2 * m_;
  }

  bool place(int k) {
    if (k == p_.size()) return finish();
    const auto& ps = p_.stays[k];
    const Time floor = k > 0 ? arrival_[k - 1] : 0;
    if (sigma_[k] == 0) {
      if (floor > 0 || !displacement_ok(k, 0)) return false;
      arrival_[k] = 0;
      return place(k + 1);
    }
    const int pk = per_machine_[ps.machine][sigma_[k] - 1];
    const int u = p_.stays[pk].vertex;
    const Time travel = inst_.travel(u, ps.vertex);
    int lo = 0;
    int hi = counts_[u] + m_ - 1 - stayed_[ps.machine][u];
    if (critical_[u]) lo = hi = p_.length[pk];
    for (int l = lo; l <= hi; ++l) {
      const Time arrival = arrival_[pk] + l + travel;
      if (arrival > target_) break;
      if (arrival < floor || !displacement_ok(k, arrival)) continue;
      arrival_[k] = arrival;
      length_[pk] = l;
      stayed_[ps.machine][u] += l;
      const bool ok = place(k + 1);
      stayed_[ps.machine][u] -= l;
      length_[pk] = -1;
      if (ok) return true;
    }
    return false;
  }

  bool finish() {
    const int depot = inst_.depot();
    routes_.assign(m_, {});
    for (int q = 0; q < m_; ++q) {
      const int last = per_machine_[q].back();
      std::vector<int> stayed = stayed_[q];
      int l;
      if (critical_[depot]) {
        l = p_.length[last];
      } else {
        l = std::max(0, counts_[depot] - stayed[depot]);
        if (stayed[depot] + l > counts_[depot] + m_ - 1) return false;
      }
      if (arrival_[last] + l > target_) return false;
      stayed[depot] += l;
      for (int v = 0; v < g_; ++v) {
        if (stayed[v] < counts_[v]) return false;
      }
      for (int k : per_machine_[q]) {
        const Time len = (k == last) ? l : length_[k];
        routes_[q].stays.push_back({arrival_[k], p_.stays[k].vertex, arrival_[k] + len});
      }
    }
    return true;
  }

  const Instance& inst_;
  const PreSchedule& p_;
  Time target_;
  int m_, g_;
  std::vector<int> counts_;
  std::vector<bool> critical_;
  std::vector<std::vector<int>> per_machine_;
  std::vector<int> sigma_, previous_k_;
  std::vector<Time> arrival_, length_;
  std::vector<std::vector<int>> stayed_;
  Routes routes_;
};

}  // namespace

std::uint64_t enumerate_preschedules(const Instance& inst,
                                     const std::function<bool(const PreSchedule&)>& visit) {
  require_prepared(inst, "enumerate_preschedules");
  PreScheduleEnumerator e(inst, visit);
  return e.run();
}

std::optional<Routes> solve_timing(const Instance& inst, const PreSchedule& p, Time L) {
  require_prepared(inst, "solve_timing");
  TimingSearch search(inst, p, L);
  return search.solve();
}

bool audit_compliance(const Instance& inst, const PreSchedule& p, const Routes& routes, Time L,
                      std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int m = inst.machine_count();
  const Schedule none(inst.job_count(), m);
  std::string route_problem;
  if (!routes_compatible(inst, none, routes, &route_problem)) return fail(route_problem);
  const auto counts = inst.jobs_per_vertex();
  for (int q = 0; q < m; ++q) {
    if (routes[q].length() > L) return fail("route longer than L");
    std::vector<Time> stayed(inst.vertex_count(), 0);
    for (const Stay& st : routes[q].stays) stayed[st.vertex] += st.departure - st.arrival;
    for (int v = 0; v < inst.vertex_count(); ++v) {
      if (stayed[v] < counts[v]) return fail("machine stays less than n_v in a vertex");
    }
  }
  const auto sigma = p.sigma();
  std::vector<int> per_machine(m, 0);
  for (const PreStay& ps : p.stays) ++per_machine[ps.machine];
  for (int q = 0; q < m; ++q) {
    if (static_cast<int>(routes[q].stays.size()) != per_machine[q]) {
      return fail("stay count differs from the pre-stay sequence");
    }
  }
  auto stay_of = [&](int k) -> const Stay& { return routes[p.stays[k].machine].stays[sigma[k]]; };
  for (int k = 0; k < p.size(); ++k) {
    if (stay_of(k).vertex != p.stays[k].vertex) return fail("(i) vertex mismatch");
    if (k + 1 < p.size() && stay_of(k).arrival > stay_of(k + 1).arrival) {
      return fail("(ii) stays out of order");
    }
    if (p.in_k(k) && stay_of(k).departure - stay_of(k).arrival != p.length[k]) {
      return fail("(iii) stay length differs from A");
    }
  }
  const auto ks = p.critical_indices();
  const int m2 = 2 * m;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    const Time diff = stay_of(ks[i]).arrival - stay_of(ks[i - 1]).arrival;
    const int d = p.displacement[ks[i]];
    if (d < m2 ? diff != d : diff < m2) return fail("(iv) displacement violated");
  }
  return true;
}

ExactResult solve_exact(const Instance& inst, const ExactOptions& options) {
  require_prepared(inst, "solve_exact");
  const int n = inst.job_count();
  const int m = inst.machine_count();
  if (n == 0) return {Schedule(0, m), 0, true, 0};

  const HamiltonianCycle h = held_karp(inst.network());
  const MakespanBounds bounds = makespan_bounds(inst, h);
  if (options.use_heuristic_shortcuts && has_no_critical_vertex(inst)) {
    return {uniform_cyclic_schedule(inst, h), bounds.lo, true, 0};
  }
  Incumbent incumbent = best_constructive(inst, h);

  const Model model = make_model(inst.network(), m, inst.jobs_per_vertex());
  const auto critical = critical_vertices(inst);
  std::vector<int> critical_jobs;
  std::vector<int> critical_job_vertex;
  for (int i = 0; i < n; ++i) {
    if (critical[inst.location(i)]) {
      critical_jobs.push_back(i);
      critical_job_vertex.push_back(inst.location(i));
    }
  }

  std::atomic<std::uint64_t> examined{0};
  const auto deadline = deadline_for(options);
  for (Time L = bounds.lo; L <= bounds.hi; ++L) {
    if (options.use_heuristic_shortcuts && incumbent.makespan <= L) {
      return {std::move(incumbent.schedule), incumbent.makespan, true, examined};
    }
    TargetResult found = search_target(model, L, critical_job_vertex, options, examined, deadline);
    if (found.outcome == TargetOutcome::kExhausted) {
      return {std::move(incumbent.schedule), incumbent.makespan, false, examined};
    }
    if (found.outcome == TargetOutcome::kRefuted) continue;
    Schedule crit(n, m);
    for (std::size_t j = 0; j < critical_jobs.size(); ++j) {
      for (int q = 0; q < m; ++q) crit(critical_jobs[j], q) = found.critical_times[j][q];
    }
    Schedule s = complete_schedule(inst, found.routes, crit);
    const Time value = makespan(inst, s);
    return {std::move(s), value, true, examined};
  }
  throw std::logic_error("solve_exact: no schedule found up to c(H)+n+m-1");
}

ExactResult solve_exact_by_enumeration(const Instance& inst, const ExactOptions& options) {
  require_prepared(inst, "solve_exact_by_enumeration");
  const int n = inst.job_count();
  const int m = inst.machine_count();
  if (n == 0) return {Schedule(0, m), 0, true, 0};
  const HamiltonianCycle h = held_karp(inst.network());
  const MakespanBounds bounds = makespan_bounds(inst, h);

  std::uint64_t examined = 0;
  bool exhausted = false;
  const auto deadline = deadline_for(options);
  for (Time L = bounds.lo; L <= bounds.hi; ++L) {
    std::optional<Schedule> result;
    enumerate_preschedules(inst, [&](const PreSchedule& p) {
      ++examined;
      if ((options.max_preschedules && examined > options.max_preschedules) ||
          (deadline && (examined & 255) == 0 && Clock::now() >= *deadline)) {
        exhausted = true;
        return false;
      }
      auto routes = solve_timing(inst, p, L);
      if (!routes) return true;
      auto crit = critical_schedule_search(inst, *routes);
      if (!crit) return true;
      result = complete_schedule(inst, *routes, *crit);
      return false;
    });
    if (result) {
      const Time value = makespan(inst, *result);
      return {std::move(*result), value, true, examined};
    }
    if (exhausted) {
      Incumbent incumbent = best_constructive(inst, h);
      return {std::move(incumbent.schedule), incumbent.makespan, false, examined};
    }
  }
  throw std::logic_error("solve_exact_by_enumeration: no schedule found up to c(H)+n+m-1");
}

DecideResult decide_makespan(const CompactInstance& ci, const ExactOptions& options) {
  require_prepared(ci.network, ci.jobs_per_vertex, "decide_makespan");
  const int n = ci.job_count();
  const int m = ci.machine_count;
  if (n == 0) return {0, true, 0};
  const HamiltonianCycle h = held_karp(ci.network);
  const Time lo = h.cost + n;
  const Time hi = lo + m - 1;
  const bool no_critical = std::all_of(ci.jobs_per_vertex.begin(), ci.jobs_per_vertex.end(),
                                       [&](int c) { return c >= m; });
  if (options.use_heuristic_shortcuts && no_critical) return {lo, true, 0};
  // Constructive upper bounds: sequential reaches hi exactly, the double
  // cycle at most 2c(H) + max(n, m).
  const Time upper = std::min(hi, 2 * h.cost + std::max(n, m));

  const Model model = make_model(ci.network, m, ci.jobs_per_vertex);
  std::vector<int> critical_job_vertex;
  for (int v = 0; v < model.g; ++v) {
    if (model.critical[v]) critical_job_vertex.insert(critical_job_vertex.end(), model.count[v], v);
  }
  std::atomic<std::uint64_t> examined{0};
  const auto deadline = deadline_for(options);
  for (Time L = lo; L <= hi; ++L) {
    if (options.use_heuristic_shortcuts && upper <= L) return {L, true, examined};
    const TargetResult found =
        search_target(model, L, critical_job_vertex, options, examined, deadline);
    if (found.outcome == TargetOutcome::kFound) return {L, true, examined};
    if (found.outcome == TargetOutcome::kExhausted) return {upper, false, examined};
  }
  throw std::logic_error("decide_makespan: no schedule found up to c(H)+n+m-1");
}

}  // namespace rosuet
