#include "cdd/dynamic.hpp"

#include <algorithm>
#include <string>

namespace cdd {

namespace {

const MachineSchedule& base_machine(const OptimizeResult& base) {
  if (base.schedule.machines.size() != 1 || base.schedule.machines.front().empty()) {
    throw StructuralError("base result must be a non-empty single-machine schedule");
  }
  return base.schedule.machines.front();
}

JobSequence combined_sequence(const Instance& instance, const MachineSchedule& original,
                              const JobSequence& arrivals) {
  JobSequence combined;
  combined.order.reserve(original.size() + arrivals.size());
  std::vector<bool> scheduled(instance.size(), false);
  for (const ScheduledJob& sj : original) {
    combined.order.push_back(sj.job);
    scheduled[instance.index_of(sj.job)] = true;
  }
  for (JobId id : arrivals.order) {
    if (scheduled[instance.index_of(id)]) {
      throw StructuralError("arrival job " + std::to_string(id) + " is already scheduled");
    }
    combined.order.push_back(id);
  }
  validate_subsequence(instance, combined);
  return combined;
}

}  // namespace

DynamicResult extend_and_reoptimize(const Instance& instance, const OptimizeResult& base,
                                    const JobSequence& arrivals) {
  const MachineSchedule& original = base_machine(base);
  combined_sequence(instance, original, arrivals);

  DynamicResult result;
  if (arrivals.empty()) {
    result.schedule = base.schedule;
    result.total = base.total;
    result.trace.push_back(base.total);
    return result;
  }

  MachineSchedule machine = original;
  Time c = original.back().completion;
  for (JobId id : arrivals.order) {
    c += instance.job(id).processing_time;
    machine.push_back({id, c});
  }

  ShiftState state = compute_shift_state(instance, machine);
  Cost best = penalty_via_signs(state);
  result.trace.push_back(best);

  // Jobs that already reached D mark the breakpoints the base run consumed;
  // resume at the first job still completing after D.
  const std::size_t n = machine.size();
  std::size_t j = 0;
  while (j < n && state.deviations[j] <= 0) ++j;
  std::size_t first_tardy = j;

  for (; j < n; ++j) {
    const Time amount = std::min(state.headroom, state.deviations[j]);
    for (Time& dt : state.deviations) dt -= amount;
    state.headroom -= amount;
    while (first_tardy < n && state.deviations[first_tardy] <= 0) {
      state.signs[first_tardy] = -instance.job(machine[first_tardy].job).early_penalty;
      ++first_tardy;
    }
    Cost value = penalty_via_signs(state);
    result.trace.push_back(value);
    if (value < best) {
      best = value;
      result.gamma += amount;
    } else {
      break;
    }
  }

  for (ScheduledJob& sj : machine) sj.completion -= result.gamma;
  result.schedule = Schedule{{std::move(machine)}};
  result.total = best;
  return result;
}

DynamicResult reoptimize_from_scratch(const Instance& instance, const OptimizeResult& base,
                                      const JobSequence& arrivals) {
  const MachineSchedule& original = base_machine(base);
  JobSequence combined = combined_sequence(instance, original, arrivals);
  OptimizeResult fresh = optimize_sequence_linear(instance, combined);

  DynamicResult result;
  result.gamma = original.front().completion - fresh.schedule.machines.front().front().completion;
  result.total = fresh.total;
  result.trace = std::move(fresh.trace);
  result.schedule = std::move(fresh.schedule);
  return result;
}

}  // namespace cdd
