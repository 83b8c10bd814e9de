#include "cdd/cli/check.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cdd/core.hpp"
#include "cdd/dynamic.hpp"
#include "cdd/instances.hpp"
#include "cdd/oracle.hpp"
#include "cdd/parallel.hpp"
#include "cdd/random.hpp"
#include "cdd/single_machine.hpp"

namespace cdd::cli {

namespace {

// Suite streams are disjoint so adding trials to one leaves the others alone.
enum : std::uint64_t { kShift = 1, kGlobal = 2, kParallel = 3, kDynamic = 4 };

Instance random_instance(Rng& rng, std::size_t n, int machines) {
  const Rational h{rng.between(1, 10), 10};
  return generate_random_instance(n, rng, GenerationRanges{}, h, machines);
}

JobSequence random_sequence(const Instance& instance, Rng& rng) {
  JobSequence seq = natural_sequence(instance);
  rng.shuffle(std::span<JobId>(seq.order));
  return seq;
}

std::string describe(const Instance& instance, const JobSequence& sequence) {
  std::ostringstream out;
  out << "  due_date " << instance.due_date() << " machines " << instance.machine_count() << '\n';
  out << "  jobs (id P alpha beta):\n";
  for (const Job& j : instance.jobs()) {
    out << "    " << j.id << ' ' << j.processing_time << ' ' << j.early_penalty << ' '
        << j.tardy_penalty << '\n';
  }
  out << "  sequence";
  for (JobId id : sequence.order) out << ' ' << id;
  out << '\n';
  return out.str();
}

Cost signs_total(const Instance& instance, const Schedule& schedule) {
  Cost total = 0;
  for (const MachineSchedule& machine : schedule.machines) {
    if (!machine.empty()) total += penalty_via_signs(compute_shift_state(instance, machine));
  }
  return total;
}

std::string shift_trial(Rng& rng, std::size_t max_n, std::ostringstream& context) {
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
  const Instance instance = random_instance(rng, n, 1);
  const JobSequence seq = random_sequence(instance, rng);
  context << describe(instance, seq);

  const Cost oracle = oracle::best_shift_bruteforce(instance, seq);
  const OptimizeResult linear = optimize_sequence_linear(instance, seq);
  const OptimizeResult log = optimize_sequence_logsearch(instance, seq);
  std::ostringstream why;
  if (linear.total != oracle) why << "linear " << linear.total << " != oracle " << oracle << "; ";
  if (log.total != oracle) why << "logsearch " << log.total << " != oracle " << oracle << "; ";
  if (log.evaluations > logsearch_evaluation_bound(n)) {
    why << "logsearch used " << log.evaluations << " evaluations; ";
  }
  for (const Schedule* s : {&linear.schedule, &log.schedule}) {
    const Cost direct = total_penalty(instance, *s);
    if (direct != signs_total(instance, *s)) why << "evaluators disagree on a schedule; ";
  }
  return why.str();
}

std::string global_trial(Rng& rng, std::size_t max_n, std::ostringstream& context) {
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
  const Instance instance = random_instance(rng, n, 1);
  context << describe(instance, natural_sequence(instance));

  const Cost oracle = oracle::global_optimum_single(instance);
  JobSequence seq = natural_sequence(instance);
  std::sort(seq.order.begin(), seq.order.end());
  SequenceScorer score(instance);
  Cost best = std::numeric_limits<Cost>::max();
  do {
    best = std::min(best, score(seq.order));
  } while (std::next_permutation(seq.order.begin(), seq.order.end()));
  if (best != oracle) {
    return "best sequence optimum " + std::to_string(best) + " != oracle " + std::to_string(oracle);
  }
  return {};
}

std::string parallel_trial(Rng& rng, std::size_t max_n, std::ostringstream& context) {
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
  const auto m = static_cast<int>(rng.between(2, oracle::kMaxParallelMachines));
  const Instance instance = random_instance(rng, n, m);
  const JobSequence seq = random_sequence(instance, rng);
  context << describe(instance, seq);

  const ParallelResult result = optimize_parallel(instance, seq);
  std::ostringstream why;
  Cost per_machine = 0;
  for (const auto& jobs : result.assignment.jobs) {
    if (jobs.empty()) continue;
    std::vector<Job> subset;
    for (JobId id : jobs) subset.push_back(instance.job(id));
    const Instance sub(std::move(subset), instance.due_date(), 1);
    per_machine += oracle::best_shift_bruteforce(sub, JobSequence{jobs});
  }
  if (result.total != per_machine) {
    why << "total " << result.total << " != per-machine oracle " << per_machine << "; ";
  }
  const Cost global = oracle::global_optimum_parallel(instance);
  if (result.total < global) why << "total " << result.total << " below global " << global << "; ";
  const Cost direct = total_penalty(instance, result.schedule);
  if (direct != result.total || direct != signs_total(instance, result.schedule)) {
    why << "evaluators disagree on the schedule; ";
  }
  return why.str();
}

std::string dynamic_trial(Rng& rng, std::size_t max_n, std::ostringstream& context) {
  const auto total = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(max_n)));
  const auto arrivals = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(total - 1)));
  const Instance instance = random_instance(rng, total, 1);
  const JobSequence all = random_sequence(instance, rng);
  const JobSequence original{{all.order.begin(), all.order.end() - static_cast<std::ptrdiff_t>(arrivals)}};
  const JobSequence added{{all.order.end() - static_cast<std::ptrdiff_t>(arrivals), all.order.end()}};
  context << describe(instance, all) << "  arrivals " << arrivals << '\n';

  const OptimizeResult base = optimize_sequence_linear(instance, original);
  const DynamicResult extended = extend_and_reoptimize(instance, base, added);
  const DynamicResult fresh = reoptimize_from_scratch(instance, base, added);
  std::ostringstream why;
  if (extended.total != fresh.total) {
    why << "extended " << extended.total << " != fresh " << fresh.total << "; ";
  }
  if (!(extended.schedule == fresh.schedule)) why << "schedules differ; ";
  if (extended.gamma < 0) why << "gamma " << extended.gamma << " is negative; ";
  if (total_penalty(instance, extended.schedule) != signs_total(instance, extended.schedule)) {
    why << "evaluators disagree on the schedule; ";
  }
  return why.str();
}

// Each trial returns an empty string on agreement, else what went wrong.
SuiteReport run_suite(const std::string& name, std::uint64_t stream, std::size_t max_n,
                      const CheckOptions& options, std::ostream& out,
                      std::string (*trial)(Rng&, std::size_t, std::ostringstream&)) {
  SuiteReport report{name, 0, 0};
  Rng rng = Rng::stream(options.seed, stream);
  for (std::size_t t = 0; t < options.trials; ++t) {
    std::ostringstream context;
    std::string why;
    try {
      why = trial(rng, max_n, context);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      ++report.passed;
    } else {
      ++report.failed;
      out << "MISMATCH " << name << " trial " << t + 1 << ": " << why << '\n' << context.str();
    }
  }
  out << name << ": " << report.passed << '/' << options.trials << " passed\n";
  return report;
}

}  // namespace

std::vector<SuiteReport> run_check(const CheckOptions& options, std::ostream& out) {
  const bool all = options.suite == "all";
  if (!all && options.suite != "shift" && options.suite != "global" && options.suite != "parallel" &&
      options.suite != "dynamic") {
    throw std::invalid_argument("unknown suite '" + options.suite + "'");
  }
  if (options.max_n < 1) throw std::invalid_argument("--max-n must be at least 1");

  auto limited = [&](std::size_t limit, const char* what) {
    if (options.max_n <= limit) return options.max_n;
    if (all) return limit;
    throw LimitError(std::string(what) + " oracle enumerates at most " + std::to_string(limit) +
                     " jobs; --max-n " + std::to_string(options.max_n) + " is too large");
  };

  const std::size_t global_n = all || options.suite == "global"
                                   ? limited(oracle::kMaxGlobalSingleJobs, "global")
                                   : 0;
  const std::size_t parallel_n = all || options.suite == "parallel"
                                     ? limited(oracle::kMaxParallelJobs, "parallel")
                                     : 0;
  if (options.suite == "dynamic" && options.max_n < 2) {
    throw std::invalid_argument("dynamic suite needs --max-n of at least 2");
  }

  std::vector<SuiteReport> reports;
  if (all || options.suite == "shift") {
    reports.push_back(run_suite("shift", kShift, options.max_n, options, out, shift_trial));
  }
  if (global_n > 0) {
    reports.push_back(run_suite("global", kGlobal, global_n, options, out, global_trial));
  }
  if (parallel_n > 0) {
    reports.push_back(run_suite("parallel", kParallel, parallel_n, options, out, parallel_trial));
  }
  if ((all || options.suite == "dynamic") && options.max_n >= 2) {
    reports.push_back(run_suite("dynamic", kDynamic, options.max_n, options, out, dynamic_trial));
  }
  return reports;
}

}  // namespace cdd::cli
