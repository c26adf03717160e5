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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "rosuet/exact.hpp"
#include "rosuet/generate.hpp"
#include "rosuet/graph.hpp"
#include "rosuet/heuristics.hpp"
#include "rosuet/instance.hpp"
#include "rosuet/oracle.hpp"
#include "rosuet/schedule.hpp"

namespace {

using namespace rosuet;

enum ExitCode { kOk = 0, kInfeasible = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AnyInstance load(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Instance load_standard(const std::string& path) {
  AnyInstance any = load(path);
  if (auto* ci = std::get_if<CompactInstance>(&any)) return expand_compact(*ci);
  return std::get<Instance>(std::move(any));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

void emit_schedule(const Schedule& s, const std::string& output) {
  if (output.empty()) {
    write_schedule(std::cout, s);
    return;
  }
  std::ofstream out(output);
  if (!out) throw UsageError("cannot write " + output);
  write_schedule(out, s);
}

struct SolveArgs {
  std::string file;
  bool exact = false;
  std::string heuristic;
  bool decide = false;
  double timeout = 0;
  int workers = 1;
  std::uint64_t max_preschedules = 0;
  bool gantt = false;
  std::string output;
};

ExactOptions exact_options(const SolveArgs& a) {
  ExactOptions o;
  o.timeout_seconds = a.timeout;
  o.workers = a.workers;
  o.max_preschedules = a.max_preschedules;
  return o;
}

int cmd_solve(const SolveArgs& a) {
  if (a.exact == !a.heuristic.empty()) throw UsageError("choose exactly one of --exact and --heuristic");
  if (a.decide && !a.exact) throw UsageError("--decide requires --exact");
  AnyInstance any = load(a.file);

  if (a.decide) {
    CompactInstance ci = std::holds_alternative<CompactInstance>(any)
                             ? std::get<CompactInstance>(any)
                             : compact_of(std::get<Instance>(any));
    const DecideResult r = decide_makespan(preprocess(ci).instance, exact_options(a));
    std::cout << "makespan " << r.makespan << (r.optimal ? "" : " UNKNOWN") << "\n";
    return r.optimal ? kOk : kBudget;
  }

  Instance original = std::holds_alternative<CompactInstance>(any)
                          ? expand_compact(std::get<CompactInstance>(any))
                          : std::get<Instance>(std::move(any));
  const Instance inst = preprocess(original).instance;
  Schedule schedule;
  bool optimal = true;
  if (a.exact) {
    ExactResult r = solve_exact(inst, exact_options(a));
    schedule = std::move(r.schedule);
    optimal = r.optimal;
  } else {
    if (inst.job_count() == 0) {
      schedule = Schedule(0, inst.machine_count());
    } else {
      const HamiltonianCycle h = held_karp(inst.network());
      if (a.heuristic == "sequential") {
        schedule = sequential_schedule(inst, h);
      } else if (a.heuristic == "double") {
        schedule = double_cycle_schedule(inst, h);
      } else if (a.heuristic == "cyclic") {
        try {
          schedule = uniform_cyclic_schedule(inst, h);
        } catch (const PreconditionError& e) {
          std::cerr << "error: precondition violated: " << e.what() << "\n";
          return kInfeasible;
        }
      } else {
        throw UsageError("unknown heuristic '" + a.heuristic + "'");
      }
    }
  }
  const FeasibilityReport report = check_feasibility(inst, schedule);
  if (!report.feasible) {
    std::cerr << "error: produced schedule is infeasible " << violation_tag(report.violation) << ": "
              << report.message << "\n";
    return kInfeasible;
  }
  std::cout << "makespan " << report.makespan << (optimal ? "" : " UNKNOWN") << "\n";
  if (a.gantt) std::cout << gantt_text(inst, schedule);
  emit_schedule(schedule, a.output);
  return optimal ? kOk : kBudget;
}

int cmd_validate(const std::string& file, const std::string& schedule_file) {
  const Instance inst = preprocess(load_standard(file)).instance;
  std::ifstream in(schedule_file);
  if (!in) throw UsageError("cannot read " + schedule_file);
  Schedule s;
  try {
    s = read_schedule(in, inst.job_count(), inst.machine_count());
  } catch (const ParseError& e) {
    throw UsageError(schedule_file + ": " + e.what());
  }
  const FeasibilityReport report = check_feasibility(inst, s);
  if (report.feasible) {
    std::cout << "feasible makespan " << report.makespan << "\n";
    return kOk;
  }
  std::cout << "infeasible " << violation_tag(report.violation) << " " << report.message << "\n";
  return kInfeasible;
}

int cmd_bound(const std::string& file) {
  const Instance inst = preprocess(load_standard(file)).instance;
  if (inst.job_count() == 0) {
    std::cout << "0 0\n";
    return kOk;
  }
  const MakespanBounds b = makespan_bounds(inst, held_karp(inst.network()));
  std::cout << b.lo << " " << b.hi << "\n";
  return kOk;
}

struct GenArgs {
  int g = 1;
  int m = 1;
  std::string jobs = "1";
  Time cmax = 1;
  std::uint64_t seed = 0;
  bool compact = false;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  GeneratorOptions o;
  o.vertices = a.g;
  o.machines = a.m;
  o.max_weight = a.cmax;
  o.seed = a.seed;
  const auto list = parse_int_list(a.jobs);
  if (list.size() == 1 && a.g != 1) {
    o.total_jobs = list[0];
  } else if (static_cast<int>(list.size()) == a.g) {
    o.counts = list;
  } else {
    throw UsageError("--jobs takes a total or one count per vertex");
  }
  Instance inst = [&] {
    try {
      return generate_instance(o);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  std::ostringstream text;
  if (a.compact) {
    write_instance(text, compact_of(inst));
  } else {
    write_instance(text, inst);
  }
  if (a.output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(a.output);
    if (!out) throw UsageError("cannot write " + a.output);
    out << text.str();
  }
  return kOk;
}

int cmd_walkcheck(int gmax, int kmax, const std::string& weights) {
  std::vector<Time> w;
  for (int x : parse_int_list(weights)) {
    if (x < 1) throw UsageError("weights must be positive");
    w.push_back(x);
  }
  const oracle::SweepSummary s = oracle::walk_bound_sweep(gmax, kmax, w);
  for (const auto& d : s.details) std::cout << d << "\n";
  std::cout << s.graphs << " graphs\n" << s.violations << " violations\n";
  return s.violations == 0 ? kOk : kInfeasible;
}

int cmd_golden(const std::vector<std::string>& files, const std::string& output) {
  std::map<std::string, Time> lines;
  for (const auto& f : files) {
    const Instance inst = load_standard(f);
    const auto r = oracle::brute_force_optimal(inst);
    if (!r) throw std::logic_error(f + ": no schedule within the default horizon");
    lines[oracle::instance_hash(inst)] = r->makespan;
  }
  std::ostringstream text;
  for (const auto& [hash, value] : lines) text << hash << " " << value << "\n";
  if (output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(output);
    if (!out) throw UsageError("cannot write " + output);
    out << text.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Routing open shop with unit execution times"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a schedule");
  solve_cmd->add_option("file", solve.file, "Instance file")->required();
  solve_cmd->add_flag("--exact", solve.exact, "Minimum-makespan schedule");
  solve_cmd->add_option("--heuristic", solve.heuristic, "sequential, double or cyclic");
  solve_cmd->add_flag("--decide", solve.decide, "Print the optimal makespan only");
  solve_cmd->add_option("--timeout", solve.timeout, "Wall-clock limit in seconds")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--workers", solve.workers, "Search threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-preschedules", solve.max_preschedules, "Pre-schedule budget, 0 = none");
  solve_cmd->add_flag("--gantt", solve.gantt, "Print a text Gantt chart");
  solve_cmd->add_option("-o,--output", solve.output, "Schedule file (default: stdout)");

  std::string validate_file, validate_schedule;
  auto* validate_cmd = app.add_subcommand("validate", "Check a schedule");
  validate_cmd->add_option("file", validate_file, "Instance file")->required();
  validate_cmd->add_option("schedule", validate_schedule, "Schedule file")->required();

  std::string bound_file;
  auto* bound_cmd = app.add_subcommand("bound", "Print the makespan range");
  bound_cmd->add_option("file", bound_file, "Instance file")->required();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Random instance");
  gen_cmd->add_option("--g", gen.g, "Vertices")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Machines")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--jobs", gen.jobs, "Total jobs, or comma-separated counts per vertex")->required();
  gen_cmd->add_option("--cmax", gen.cmax, "Largest edge weight")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed")->required();
  gen_cmd->add_flag("--compact", gen.compact, "Write the compact encoding");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default: stdout)");

  int gmax = 5, kmax = 4;
  std::string weights = "1,2";
  auto* walk_cmd = app.add_subcommand("walkcheck", "Closed spanning walk bound sweep");
  walk_cmd->add_option("--gmax", gmax, "Largest vertex count")->check(CLI::Range(1, 6));
  walk_cmd->add_option("--kmax", kmax, "Largest excess length")->check(CLI::NonNegativeNumber);
  walk_cmd->add_option("--weights", weights, "Comma-separated edge weights");

  std::vector<std::string> golden_files;
  std::string golden_out;
  auto* golden_cmd = app.add_subcommand("golden", "Oracle makespans as 'hash makespan' lines");
  golden_cmd->add_option("files", golden_files, "Instance files")->required();
  golden_cmd->add_option("--out", golden_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*validate_cmd) return cmd_validate(validate_file, validate_schedule);
    if (*bound_cmd) return cmd_bound(bound_file);
    if (*gen_cmd) return cmd_gen(gen);
    if (*walk_cmd) return cmd_walkcheck(gmax, kmax, weights);
    if (*golden_cmd) return cmd_golden(golden_files, golden_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  }
  return kUsage;
}
