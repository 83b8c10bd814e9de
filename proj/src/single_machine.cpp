#include "cdd/single_machine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "breakpoint_search.hpp"

namespace cdd {

namespace {

const MachineSchedule& only_machine(const Schedule& schedule) {
  if (schedule.machines.size() != 1) {
    throw StructuralError("expected a single-machine schedule");
  }
  return schedule.machines.front();
}

Schedule shifted(const Schedule& schedule, Time amount) {
  Schedule out = schedule;
  for (auto& sj : out.machines.front()) sj.completion -= amount;
  return out;
}

}  // namespace

Schedule initialize_compact(const Instance& instance, const JobSequence& sequence) {
  if (sequence.empty()) throw StructuralError("cannot schedule an empty sequence");
  validate_subsequence(instance, sequence);
  MachineSchedule machine;
  machine.reserve(sequence.size());
  Time c = 0;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const Job& job = instance.job(sequence.order[i]);
    c = i == 0 ? std::max(job.processing_time, instance.due_date()) : c + job.processing_time;
    machine.push_back({job.id, c});
  }
  return Schedule{{std::move(machine)}};
}

Schedule apply_left_shift(const Instance& instance, const Schedule& schedule, Time amount) {
  const MachineSchedule& machine = only_machine(schedule);
  if (amount < 0) throw std::invalid_argument("left shift must be nonnegative");
  if (machine.empty() || amount == 0) return schedule;
  Time headroom = machine.front().completion - instance.job(machine.front().job).processing_time;
  if (amount > headroom) {
    throw std::invalid_argument("left shift of " + std::to_string(amount) +
                                " exceeds headroom " + std::to_string(headroom));
  }
  return shifted(schedule, amount);
}

OptimizeResult optimize_sequence_linear(const Instance& instance, const JobSequence& sequence,
                                        const LinearOptions& options) {
  const Schedule initial = initialize_compact(instance, sequence);
  const MachineSchedule& init_machine = initial.machines.front();
  const std::size_t n = init_machine.size();
  const Time due = instance.due_date();

  ShiftState state = compute_shift_state(instance, init_machine);
  Cost best = penalty_via_signs(state);

  OptimizeResult result;
  result.trace.push_back(best);
  result.evaluations = 1;
  if (options.observer) options.observer(init_machine, best);

  // Incremental path: jobs [0, first_tardy) carry the early sign.
  std::size_t first_tardy = 0;
  while (first_tardy < n && state.deviations[first_tardy] <= 0) ++first_tardy;
  Schedule current = initial;  // full path only

  Time accepted_shift = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const Time amount = std::min(state.headroom, state.deviations[j]);
    Cost value = 0;
    if (options.update == StateUpdate::full) {
      current = apply_left_shift(instance, current, amount);
      state = compute_shift_state(instance, current.machines.front());
      value = penalty_via_signs(state);
      if (options.observer) options.observer(current.machines.front(), value);
    } else {
      for (Time& dt : state.deviations) dt -= amount;
      state.headroom -= amount;
      while (first_tardy < n && state.deviations[first_tardy] <= 0) {
        state.signs[first_tardy] = -instance.job(init_machine[first_tardy].job).early_penalty;
        ++first_tardy;
      }
      value = penalty_via_signs(state);
      if (options.observer) {
        MachineSchedule m = init_machine;
        for (std::size_t i = 0; i < n; ++i) m[i].completion = state.deviations[i] + due;
        options.observer(m, value);
      }
    }
    result.trace.push_back(value);
    ++result.evaluations;
    if (value < best) {
      best = value;
      accepted_shift += amount;
    } else {
      break;
    }
  }

  result.total = best;
  result.total_shift = accepted_shift;
  result.schedule = shifted(initial, accepted_shift);
  return result;
}

OptimizeResult optimize_sequence_logsearch(const Instance& instance, const JobSequence& sequence,
                                           const ScheduleObserver& observer) {
  const Schedule initial = initialize_compact(instance, sequence);
  const MachineSchedule& init_machine = initial.machines.front();
  const std::size_t n = init_machine.size();
  const Time due = instance.due_date();

  std::vector<std::size_t> order(n);
  std::vector<Time> c0(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = instance.index_of(init_machine[i].job);
    c0[i] = init_machine[i].completion;
  }
  const Time headroom0 = c0.front() - instance.jobs()[order.front()].processing_time;

  std::vector<std::pair<std::size_t, Cost>> cache;
  auto value_at = [&](std::size_t j) {
    Time s = detail::breakpoint_shift(c0, headroom0, due, j);
    Cost v = detail::shifted_block_value(instance.jobs(), order, c0, due, s);
    if (observer) observer(shifted(initial, s).machines.front(), v);
    return v;
  };
  const std::size_t best_j = detail::find_breakpoint_minimum(n, value_at, cache);

  OptimizeResult result;
  for (const auto& [j, v] : cache) {
    result.trace.push_back(v);
    if (j == best_j) result.total = v;
  }
  result.evaluations = cache.size();
  result.total_shift = detail::breakpoint_shift(c0, headroom0, due, best_j);
  result.schedule = shifted(initial, result.total_shift);
  return result;
}

std::size_t logsearch_evaluation_bound(std::size_t n) {
  std::size_t floor_log2 = n == 0 ? 0 : static_cast<std::size_t>(std::bit_width(n)) - 1;
  return 6 * (floor_log2 + 2);
}

SequenceScorer::SequenceScorer(const Instance& instance) : instance_(&instance) {
  index_.reserve(instance.size());
  completion_.reserve(instance.size());
  cache_.reserve(logsearch_evaluation_bound(instance.size()));
}

Cost SequenceScorer::operator()(std::span<const JobId> order) {
  index_.clear();
  for (JobId id : order) index_.push_back(instance_->index_of(id));
  return by_index(index_);
}

Cost SequenceScorer::by_index(std::span<const std::size_t> order) {
  if (order.empty()) throw StructuralError("cannot score an empty sequence");
  const auto& jobs = instance_->jobs();
  const Time due = instance_->due_date();
  completion_.resize(order.size());
  Time c = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Time p = jobs[order[i]].processing_time;
    c = i == 0 ? std::max(p, due) : c + p;
    completion_[i] = c;
  }
  const Time headroom0 = completion_.front() - jobs[order.front()].processing_time;
  auto value_at = [&](std::size_t j) {
    Time s = detail::breakpoint_shift(completion_, headroom0, due, j);
    return detail::shifted_block_value(jobs, order, completion_, due, s);
  };
  std::size_t best_j = detail::find_breakpoint_minimum(order.size(), value_at, cache_);
  for (const auto& [j, v] : cache_) {
    if (j == best_j) return v;
  }
  return 0;  // unreachable: best_j is always evaluated
}

}  // namespace cdd
