#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cdd/core.hpp"

namespace cdd {

/// Outcome of optimizing one fixed job order on one machine.
struct OptimizeResult {
  Schedule schedule;        // one machine
  Cost total = 0;
  std::vector<Cost> trace;  // V values in evaluation order, trace[0] is the initial value
  Time total_shift = 0;     // uniform left shift applied to the compact start
  std::size_t evaluations = 0;
};

// Called with every schedule whose objective the optimizer evaluates.
using ScheduleObserver = std::function<void(const MachineSchedule&, Cost value)>;

enum class StateUpdate {
  incremental,  // subtract the shift from DT, flip PL for jobs reaching D
  full,         // rebuild the schedule and recompute DT/PL/ES from scratch
};

struct LinearOptions {
  StateUpdate update = StateUpdate::incremental;
  ScheduleObserver observer;
};

/// Compact schedule with no early job: C_1 = max(P_1, D), C_i = C_{i-1} + P_i.
/// `sequence` may be any ordered subset of the instance's jobs.
Schedule initialize_compact(const Instance& instance, const JobSequence& sequence);

/// Moves every job on a single-machine schedule `amount` units earlier.
/// Throws std::invalid_argument when `amount` exceeds the headroom C_1 - P_1.
Schedule apply_left_shift(const Instance& instance, const Schedule& schedule, Time amount);

/// Breakpoint-by-breakpoint left-shift loop. Each step shifts by
/// min(ES, DT_j) and is kept only if it strictly lowers the objective; the
/// first non-improving value is still recorded in the trace.
OptimizeResult optimize_sequence_linear(const Instance& instance, const JobSequence& sequence,
                                        const LinearOptions& options = {});

/// Same optimum as optimize_sequence_linear, found with an exponential
/// search over the breakpoint index followed by a binary search. Uses at
/// most 6 * (floor(log2 n) + 2) objective evaluations.
OptimizeResult optimize_sequence_logsearch(const Instance& instance, const JobSequence& sequence,
                                           const ScheduleObserver& observer = {});

std::size_t logsearch_evaluation_bound(std::size_t n);

/// Allocation-reusing scorer for metaheuristics: returns the logsearch
/// optimum of an order without materializing the schedule.
class SequenceScorer {
 public:
  explicit SequenceScorer(const Instance& instance);

  Cost operator()(std::span<const JobId> order);
  // Logsearch optimum on one machine; `order` lists job indices into
  // Instance::jobs() rather than ids.
  Cost by_index(std::span<const std::size_t> order);

 private:
  const Instance* instance_;
  std::vector<std::size_t> index_;
  std::vector<Time> completion_;
  std::vector<std::pair<std::size_t, Cost>> cache_;
};

}  // namespace cdd
