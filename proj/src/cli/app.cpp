#include "cdd/cli/app.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cdd/cli/bench.hpp"
#include "cdd/cli/check.hpp"
#include "cdd/cli/gantt.hpp"
#include "cdd/cli/result_io.hpp"
#include "cdd/core.hpp"
#include "cdd/instances.hpp"
#include "cdd/metaheuristic.hpp"
#include "cdd/parallel.hpp"
#include "cdd/single_machine.hpp"

namespace cdd::cli {

namespace {

// Bad user input that is not a flag-syntax problem; maps to exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::istringstream words(item);
    std::string word;
    while (words >> word) items.push_back(word);
  }
  return items;
}

template <class T>
T parse_integer(const std::string& token, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw InputError(std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
  if (!file.flush()) throw InputError("cannot write " + path);
}

// Rows of 0/1 tokens, one line per job in instance order.
FeasibilityMatrix load_feasibility(const std::string& path, std::size_t jobs, int machines) {
  std::istringstream in(read_file(path));
  FeasibilityMatrix matrix;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<bool> row;
    while (cells >> cell) {
      if (cell != "0" && cell != "1") throw InputError("feasibility entries must be 0 or 1");
      row.push_back(cell == "1");
    }
    if (row.empty()) continue;
    if (row.size() != static_cast<std::size_t>(machines)) {
      throw InputError("feasibility row " + std::to_string(matrix.size() + 1) + " has " +
                       std::to_string(row.size()) + " entries, expected " + std::to_string(machines));
    }
    matrix.push_back(std::move(row));
  }
  if (matrix.size() != jobs) {
    throw InputError("feasibility file has " + std::to_string(matrix.size()) + " rows for " +
                     std::to_string(jobs) + " jobs");
  }
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    bool any = false;
    for (bool b : matrix[i]) any = any || b;
    if (!any) throw InfeasibleError("job " + std::to_string(i + 1) + " has no feasible machine");
  }
  return matrix;
}

std::string join(const std::vector<JobId>& ids, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(ids[i]);
  }
  return s;
}

struct SolveArgs {
  std::string instance;
  std::size_t index = 1;
  std::string h;
  std::optional<Time> due_date;
  int machines = 1;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::size_t ensemble = 0;
  std::size_t threads = 1;
  std::string mode = "anneal";
  std::string sequence;
  std::string json;
  std::string feasibility;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const RawInstanceSet set = load_orlib(a.instance);
  if (a.index < 1 || a.index > set.entries.size()) {
    throw InputError("--index " + std::to_string(a.index) + " outside 1.." +
                     std::to_string(set.entries.size()));
  }
  if (a.machines < 1) throw InputError("--machines must be at least 1");
  const RawInstance& raw = set.entries[a.index - 1];

  std::optional<Rational> h;
  Time due_date = 0;
  if (a.due_date) {
    if (!a.h.empty()) throw InputError("--h and --due-date are mutually exclusive");
    due_date = *a.due_date;
  } else {
    if (a.h.empty()) throw InputError("one of --h or --due-date is required");
    h = Rational::parse(a.h);
    Time total = 0;
    for (const Job& j : raw.jobs) total += j.processing_time;
    due_date = compute_due_date(*h, total, a.machines);
  }
  std::optional<FeasibilityMatrix> feasibility;
  if (!a.feasibility.empty()) feasibility = load_feasibility(a.feasibility, raw.jobs.size(), a.machines);
  const Instance instance(raw.jobs, due_date, a.machines, feasibility);

  SolveRecord record;
  record.instance = &instance;
  nlohmann::ordered_json& cfg = record.config;
  cfg["command"] = "solve";
  cfg["instance"] = a.instance;
  cfg["index"] = a.index;
  cfg["h"] = h ? nlohmann::ordered_json(h->to_string()) : nlohmann::ordered_json(nullptr);
  cfg["due_date"] = due_date;
  cfg["machines"] = a.machines;
  cfg["feasibility"] = a.feasibility.empty() ? nlohmann::ordered_json(nullptr)
                                             : nlohmann::ordered_json(a.feasibility);
  cfg["mode"] = a.mode;

  if (a.mode == "exact-sequence") {
    JobSequence seq;
    if (a.sequence.empty()) {
      seq = natural_sequence(instance);
    } else {
      for (const std::string& t : split_list(a.sequence)) seq.order.push_back(parse_integer<JobId>(t, "job id"));
    }
    validate_permutation(instance, seq);
    cfg["sequence"] = seq.order;
    record.sequence = seq;
    if (a.machines == 1) {
      OptimizeResult r = optimize_sequence_linear(instance, seq);
      record.schedule = r.schedule;
      record.total = r.total;
      record.machine_totals = {r.total};
      record.trace = r.trace;
    } else {
      ParallelResult r = optimize_parallel(instance, seq);
      record.schedule = r.schedule;
      record.total = r.total;
      record.machine_totals = r.machine_totals;
    }
  } else if (a.mode == "anneal") {
    if (!a.sequence.empty()) throw InputError("--sequence applies only to --mode exact-sequence");
    AnnealConfig config;
    config.seed = a.seed;
    config.max_iterations = a.iterations;
    config.ensemble_size = a.ensemble;
    config.threads = a.threads;
    AnnealResult r = anneal(instance, config, a.machines > 1 ? AnnealMode::parallel : AnnealMode::single);
    const AnnealConfig& c = r.config;
    cfg["anneal"] = {{"seed", c.seed},
                     {"ensemble_size", c.ensemble_size},
                     {"max_iterations", c.max_iterations},
                     {"cooling_rate", c.cooling_rate},
                     {"constant_accept", c.constant_accept},
                     {"temperature_samples", c.temperature_samples},
                     {"reinjection_interval", c.reinjection_interval},
                     {"threads", c.threads}};
    record.sequence = r.best_sequence;
    record.schedule = r.best_schedule;
    record.total = r.best_total;
    for (const MachineSchedule& m : r.best_schedule.machines) {
      record.machine_totals.push_back(
          m.empty() ? 0 : penalty_via_signs(compute_shift_state(instance, m)));
    }
    record.search = std::move(r);
  } else {
    throw InputError("--mode must be exact-sequence or anneal");
  }

  out << "best total " << record.total << '\n';
  out << "sequence " << join(record.sequence.order, ",") << '\n';
  if (record.trace) {
    out << "trace";
    for (Cost v : *record.trace) out << ' ' << v;
    out << '\n';
  }
  if (record.search) out << "iterations used " << record.search->iterations_used << '\n';
  for (std::size_t m = 0; m < record.schedule.machines.size(); ++m) {
    out << 'M' << m + 1 << " total " << record.machine_totals[m] << " completions";
    for (const ScheduledJob& sj : record.schedule.machines[m]) out << " J" << sj.job << '=' << sj.completion;
    out << '\n';
  }
  if (!a.json.empty()) write_output(a.json, to_json(record).dump(2) + "\n", out);
  return kExitOk;
}

struct BenchArgs {
  std::string instances;
  std::string h_list = "0.2,0.4,0.6,0.8";
  int machines = 1;
  std::string seeds;
  std::string indices;
  std::size_t iterations = 0;
  std::size_t ensemble = 0;
  std::size_t threads = 1;
  std::size_t chain_threads = 1;
  bool wall_clock = false;
  bool table = false;
  std::string out;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions options;
  for (const std::string& t : split_list(a.h_list)) options.h_list.push_back(Rational::parse(t));
  for (const std::string& t : split_list(a.seeds)) options.seeds.push_back(parse_integer<std::uint64_t>(t, "seed"));
  for (const std::string& t : split_list(a.indices)) options.indices.push_back(parse_integer<std::size_t>(t, "index"));
  if (options.seeds.empty()) throw InputError("--seeds must list at least one seed");
  if (options.h_list.empty()) throw InputError("--h-list must list at least one value");
  if (a.machines < 1) throw InputError("--machines must be at least 1");
  options.machines = a.machines;
  options.iterations = a.iterations;
  options.ensemble = a.ensemble;
  options.threads = a.threads;
  options.chain_threads = a.chain_threads;
  options.wall_clock = a.wall_clock;

  const RawInstanceSet set = load_orlib(a.instances);
  const std::vector<BenchRow> rows = run_bench(set, options);
  if (!a.out.empty() || !a.table) write_output(a.out, bench_csv(rows), out);
  if (a.table) out << bench_table(rows);
  return kExitOk;
}

int cmd_check(const CheckOptions& options, std::ostream& out) {
  std::vector<SuiteReport> reports = run_check(options, out);
  std::size_t passed = 0;
  std::size_t failed = 0;
  for (const SuiteReport& r : reports) {
    passed += r.passed;
    failed += r.failed;
  }
  out << "total: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitMismatch;
}

struct GanttArgs {
  std::string result;
  std::string format = "text";
  std::string out;
};

int cmd_gantt(const GanttArgs& a, std::ostream& out) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(a.result));
  } catch (const nlohmann::json::exception& e) {
    throw ResultFormatError(std::string("malformed result file: ") + e.what());
  }
  const GanttChart chart = gantt_from_result(doc);
  write_output(a.out, a.format == "svg" ? render_gantt_svg(chart) : render_gantt_text(chart), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Common due-date earliness/tardiness scheduling", "cdd"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Optimize one benchmark instance");
  solve->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  solve->add_option("--instance", solve_args.instance, "OR-library instance file")->required();
  solve->add_option("--index", solve_args.index, "1-based instance number k in the file");
  solve->add_option("--h", solve_args.h, "Restrictive factor, e.g. 0.4 or 16/21");
  solve->add_option("--due-date", solve_args.due_date, "Explicit due date instead of --h");
  solve->add_option("--machines", solve_args.machines, "Number of machines");
  solve->add_option("--seed", solve_args.seed, "Annealing seed");
  solve->add_option("--iterations", solve_args.iterations, "Iterations per chain (0 = 500n)");
  solve->add_option("--ensemble", solve_args.ensemble, "Chains (0 = 4 + n/10)");
  solve->add_option("--threads", solve_args.threads, "Threads for the chains");
  solve->add_option("--mode", solve_args.mode, "exact-sequence or anneal")
      ->check(CLI::IsMember({"exact-sequence", "anneal"}));
  solve->add_option("--sequence", solve_args.sequence, "Job order for exact-sequence, e.g. 1,2,3");
  solve->add_option("--json", solve_args.json, "Write the result document here");
  solve->add_option("--feasibility", solve_args.feasibility, "0/1 matrix, one row per job");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Anneal every (instance, h, seed) cell and emit CSV");
  bench->add_option("--instances", bench_args.instances, "OR-library instance file")->required();
  bench->add_option("--h-list", bench_args.h_list, "Comma-separated restrictive factors");
  bench->add_option("--machines", bench_args.machines, "Number of machines");
  bench->add_option("--seeds", bench_args.seeds, "Comma-separated seeds")->required();
  bench->add_option("--index", bench_args.indices, "Comma-separated instance numbers (default all)");
  bench->add_option("--iterations", bench_args.iterations, "Iterations per chain (0 = 500n)");
  bench->add_option("--ensemble", bench_args.ensemble, "Chains (0 = 4 + n/10)");
  bench->add_option("--threads", bench_args.threads, "Cells run concurrently");
  bench->add_option("--chain-threads", bench_args.chain_threads, "Threads inside each run");
  bench->add_flag("--wall-clock", bench_args.wall_clock, "Fill the wall_ms column");
  bench->add_flag("--table", bench_args.table, "Print a grid of best totals per h");
  bench->add_option("--out", bench_args.out, "CSV output path (default stdout)");

  CheckOptions check_args;
  auto* check = app.add_subcommand("check", "Compare the solvers against exhaustive oracles");
  check->add_option("--trials", check_args.trials, "Random trials per suite");
  check->add_option("--max-n", check_args.max_n, "Largest instance size");
  check->add_option("--seed", check_args.seed, "Seed for the random trials");
  check->add_option("--suite", check_args.suite, "shift, global, parallel, dynamic or all")
      ->check(CLI::IsMember({"shift", "global", "parallel", "dynamic", "all"}));

  GanttArgs gantt_args;
  auto* gantt = app.add_subcommand("gantt", "Render a solve result as a Gantt chart");
  gantt->add_option("--result", gantt_args.result, "JSON written by solve --json")->required();
  gantt->add_option("--format", gantt_args.format, "text or svg")->check(CLI::IsMember({"text", "svg"}));
  gantt->add_option("--out", gantt_args.out, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args, out);
    if (bench->parsed()) return cmd_bench(bench_args, out);
    if (check->parsed()) return cmd_check(check_args, out);
    return cmd_gantt(gantt_args, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cdd::cli
