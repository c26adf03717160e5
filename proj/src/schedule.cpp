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

#include "rosuet/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace rosuet {

const char* violation_tag(Violation v) {
  switch (v) {
    case Violation::kMachineOverlap:
      return "(i)";
    case Violation::kJobOverlap:
      return "(ii)";
    case Violation::kNoRoute:
      return "(iii)";
    case Violation::kNone:
      break;
  }
  return "";
}

namespace {

// (start, job) pairs of one machine in chronological order.
std::vector<std::pair<Time, int>> machine_jobs(const Schedule& sched, int q) {
  std::vector<std::pair<Time, int>> jobs;
  jobs.reserve(sched.job_count());
  for (int i = 0; i < sched.job_count(); ++i) jobs.emplace_back(sched(i, q), i);
  std::sort(jobs.begin(), jobs.end());
  return jobs;
}

struct RouteFailure {
  int machine;
  int job;
};

std::optional<Route> canonical_route(const Instance& inst, const Schedule& sched, int q,
                                     RouteFailure* failure) {
  const int depot = inst.depot();
  const auto jobs = machine_jobs(sched, q);
  Route route;
  if (jobs.empty()) {
    route.stays.push_back({0, depot, 0});
    return route;
  }

  int vertex = depot;
  Time departure = 0;
  std::size_t k = 0;
  while (k < jobs.size()) {
    const int v = inst.location(jobs[k].second);
    std::size_t last = k;
    while (last + 1 < jobs.size() && inst.location(jobs[last + 1].second) == v) ++last;
    const Time first_start = jobs[k].first;
    Time arrival;
    if (route.stays.empty() && v == depot) {
      arrival = 0;
    } else {
      if (route.stays.empty()) route.stays.push_back({0, depot, 0});
      arrival = checked_add(departure, inst.travel(vertex, v));
    }
    if (arrival > first_start) {
      if (failure) *failure = {q, jobs[k].second};
      return std::nullopt;
    }
    departure = checked_add(jobs[last].first, 1);
    route.stays.push_back({arrival, v, departure});
    vertex = v;
    k = last + 1;
  }
  if (vertex != depot) {
    const Time back = checked_add(departure, inst.travel(vertex, depot));
    route.stays.push_back({back, depot, back});
  }
  return route;
}

void require_checkable(const Instance& inst, const Schedule& sched) {
  if (!inst.is_metric() || !inst.is_trimmed()) {
    throw PreconditionError("feasibility check requires a metric, trimmed instance");
  }
  if (sched.job_count() != inst.job_count() || sched.machine_count() != inst.machine_count()) {
    throw PreconditionError("schedule dimensions do not match the instance");
  }
  if ((sched.start.array() < 0).any()) {
    throw PreconditionError("partial schedule: every job needs a start time on every machine");
  }
}

}  // namespace

std::optional<Routes> compute_routes(const Instance& inst, const Schedule& sched) {
  Routes routes;
  routes.reserve(inst.machine_count());
  for (int q = 0; q < inst.machine_count(); ++q) {
    auto route = canonical_route(inst, sched, q, nullptr);
    if (!route) return std::nullopt;
    routes.push_back(std::move(*route));
  }
  return routes;
}

FeasibilityReport check_feasibility(const Instance& inst, const Schedule& sched) {
  require_checkable(inst, sched);
  FeasibilityReport report;
  const int n = inst.job_count();
  const int m = inst.machine_count();

  for (int q = 0; q < m; ++q) {
    const auto jobs = machine_jobs(sched, q);
    for (std::size_t k = 1; k < jobs.size(); ++k) {
      if (jobs[k].first < checked_add(jobs[k - 1].first, 1)) {
        report.violation = Violation::kMachineOverlap;
        report.machine = q;
        report.job = jobs[k - 1].second;
        report.other_job = jobs[k].second;
        report.message = "machine " + std::to_string(q + 1) + " processes jobs " +
                         std::to_string(report.job + 1) + " and " +
                         std::to_string(report.other_job + 1) + " at the same time";
        return report;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<Time, int>> machines;
    for (int q = 0; q < m; ++q) machines.emplace_back(sched(i, q), q);
    std::sort(machines.begin(), machines.end());
    for (std::size_t k = 1; k < machines.size(); ++k) {
      if (machines[k].first < checked_add(machines[k - 1].first, 1)) {
        report.violation = Violation::kJobOverlap;
        report.job = i;
        report.machine = machines[k - 1].second;
        report.other_machine = machines[k].second;
        report.message = "job " + std::to_string(i + 1) + " is processed by machines " +
                         std::to_string(report.machine + 1) + " and " +
                         std::to_string(report.other_machine + 1) + " at the same time";
        return report;
      }
    }
  }

  for (int q = 0; q < m; ++q) {
    RouteFailure failure{};
    auto route = canonical_route(inst, sched, q, &failure);
    if (!route) {
      report.violation = Violation::kNoRoute;
      report.machine = failure.machine;
      report.job = failure.job;
      report.routes.clear();
      report.message = "machine " + std::to_string(q + 1) + " cannot reach job " +
                       std::to_string(failure.job + 1) + " in vertex " +
                       std::to_string(inst.location(failure.job) + 1) + " by time " +
                       std::to_string(sched(failure.job, q));
      return report;
    }
    report.makespan = std::max(report.makespan, route->length());
    report.routes.push_back(std::move(*route));
  }
  report.feasible = true;
  return report;
}

Time makespan(const Instance& inst, const Schedule& sched) {
  const auto report = check_feasibility(inst, sched);
  if (!report.feasible) throw std::invalid_argument("infeasible schedule: " + report.message);
  return report.makespan;
}

bool routes_compatible(const Instance& inst, const Schedule& sched, const Routes& routes,
                       std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (static_cast<int>(routes.size()) != inst.machine_count()) return fail("route count");
  for (int q = 0; q < inst.machine_count(); ++q) {
    const auto& stays = routes[q].stays;
    const std::string who = "machine " + std::to_string(q + 1) + ": ";
    if (stays.empty()) return fail(who + "empty route");
    if (stays.front().vertex != inst.depot() || stays.back().vertex != inst.depot()) {
      return fail(who + "route must start and end at the depot");
    }
    if (stays.front().arrival != 0) return fail(who + "route must start at time 0");
    for (std::size_t k = 0; k < stays.size(); ++k) {
      if (stays[k].arrival > stays[k].departure) return fail(who + "negative stay");
      if (k + 1 < stays.size()) {
        const int u = stays[k].vertex;
        const int v = stays[k + 1].vertex;
        if (!inst.network().has_edge(u, v)) return fail(who + "consecutive stays not adjacent");
        if (stays[k + 1].arrival != stays[k].departure + inst.travel(u, v)) {
          return fail(who + "travel time mismatch");
        }
      }
    }
    for (int i = 0; i < inst.job_count(); ++i) {
      const Time s = sched(i, q);
      if (s == kUnset) continue;
      const int v = inst.location(i);
      const bool covered = std::any_of(stays.begin(), stays.end(), [&](const Stay& st) {
        return st.vertex == v && st.arrival <= s && s + 1 <= st.departure;
      });
      if (!covered) return fail(who + "job " + std::to_string(i + 1) + " not inside a stay");
    }
  }
  return true;
}

std::string gantt_text(const Instance& inst, const Schedule& sched) {
  const auto report = check_feasibility(inst, sched);
  if (!report.feasible) throw std::invalid_argument("gantt_text: " + report.message);
  const Time horizon = report.makespan;
  const int label_width = static_cast<int>(std::to_string(inst.machine_count()).size()) + 1;

  std::ostringstream out;
  out << std::string(label_width, ' ') << " |";
  for (Time t = 0; t < horizon; ++t) out << static_cast<char>('0' + t % 10);
  out << "|\n";
  for (int q = 0; q < inst.machine_count(); ++q) {
    std::string cells(static_cast<std::size_t>(horizon), ' ');
    for (Time t = 0; t < report.routes[q].length(); ++t) cells[t] = '-';
    for (const Stay& st : report.routes[q].stays) {
      for (Time t = st.arrival; t < st.departure; ++t) cells[t] = '.';
    }
    for (int i = 0; i < inst.job_count(); ++i) cells[sched(i, q)] = '#';
    std::string label = "M" + std::to_string(q + 1);
    label.resize(label_width, ' ');
    out << label << " |" << cells << "| ";
    for (const Stay& st : report.routes[q].stays) {
      out << " [" << st.arrival << ',' << st.departure << ")@" << st.vertex + 1;
    }
    out << '\n';
  }
  return out.str();
}

void write_schedule(std::ostream& out, const Schedule& sched) {
  out << "ROSUET schedule\n";
  for (int i = 0; i < sched.job_count(); ++i) {
    for (int q = 0; q < sched.machine_count(); ++q) {
      out << i + 1 << ' ' << q + 1 << ' ' << sched(i, q) << '\n';
    }
  }
}

Schedule read_schedule(std::istream& in, int jobs, int machines) {
  std::string line;
  int line_no = 0;
  bool header = false;
  Schedule sched(jobs, machines);
  int filled = 0;
  auto parse_int = [&](const std::string& word) {
    Time value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
      throw ParseError(line_no, "expected integer, got '" + word + "'");
    }
    return value;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream words(line);
    if (!header) {
      std::string a, b;
      words >> a >> b;
      if (a != "ROSUET" || b != "schedule") {
        throw ParseError(line_no, "malformed header, expected 'ROSUET schedule'");
      }
      header = true;
      continue;
    }
    std::string wi, wq, ws, extra;
    if (!(words >> wi >> wq >> ws) || (words >> extra)) {
      throw ParseError(line_no, "expected 'i q S'");
    }
    const Time i = parse_int(wi);
    const Time q = parse_int(wq);
    const Time s = parse_int(ws);
    if (i < 1 || i > jobs) throw ParseError(line_no, "job index out of range");
    if (q < 1 || q > machines) throw ParseError(line_no, "machine index out of range");
    if (s < 0) throw ParseError(line_no, "negative start time");
    if (sched(i - 1, q - 1) != kUnset) throw ParseError(line_no, "duplicate entry");
    sched(i - 1, q - 1) = s;
    ++filled;
  }
  if (!header) throw ParseError(line_no, "missing 'ROSUET schedule' header");
  if (filled != jobs * machines) {
    throw ParseError(line_no, "expected " + std::to_string(jobs * machines) + " entries, got " +
                                  std::to_string(filled));
  }
  return sched;
}

}  // namespace rosuet
