#include "cdd/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace cdd::oracle {

namespace {

Schedule compact_schedule(const Instance& instance, const std::vector<JobId>& order, Time shift) {
  MachineSchedule machine;
  machine.reserve(order.size());
  Time c = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Time p = instance.job(order[i]).processing_time;
    c = i == 0 ? std::max(p, instance.due_date()) - shift : c + p;
    machine.push_back({order[i], c});
  }
  return Schedule{{std::move(machine)}};
}

Cost best_over_orders(const Instance& instance) {
  std::vector<JobId> order;
  for (const Job& j : instance.jobs()) order.push_back(j.id);
  std::sort(order.begin(), order.end());
  Cost best = std::numeric_limits<Cost>::max();
  do {
    best = std::min(best, best_shift_bruteforce(instance, JobSequence{order}));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

ShiftSearch best_shift_search(const Instance& instance, const JobSequence& sequence) {
  validate_permutation(instance, sequence);
  const Time p1 = instance.job(sequence.order.front()).processing_time;
  const Time headroom = std::max(p1, instance.due_date()) - p1;

  ShiftSearch best;
  best.total = std::numeric_limits<Cost>::max();
  for (Time s = 0; s <= headroom; ++s) {
    Schedule schedule = compact_schedule(instance, sequence.order, s);
    Cost total = evaluate_penalty(instance, schedule).total;
    if (total < best.total) {
      best.total = total;
      best.shift = s;
      best.schedule = std::move(schedule);
    }
  }
  return best;
}

Cost best_shift_bruteforce(const Instance& instance, const JobSequence& sequence) {
  return best_shift_search(instance, sequence).total;
}

Cost global_optimum_single(const Instance& instance) {
  if (instance.size() > kMaxGlobalSingleJobs) {
    throw LimitError("global single-machine oracle is limited to " +
                     std::to_string(kMaxGlobalSingleJobs) + " jobs, got " +
                     std::to_string(instance.size()));
  }
  return best_over_orders(instance.with_machine_count(1));
}

Cost global_optimum_parallel(const Instance& instance) {
  const std::size_t n = instance.size();
  const int m = instance.machine_count();
  if (n > kMaxParallelJobs || m > kMaxParallelMachines) {
    throw LimitError("global parallel oracle is limited to " + std::to_string(kMaxParallelJobs) +
                     " jobs on " + std::to_string(kMaxParallelMachines) + " machines, got " +
                     std::to_string(n) + " on " + std::to_string(m));
  }

  // Best single-machine value of every job subset; the due date is shared.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Cost> subset_best(subsets, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) jobs.push_back(instance.jobs()[i]);
    }
    subset_best[mask] = best_over_orders(Instance(std::move(jobs), instance.due_date(), 1));
  }

  Cost best = std::numeric_limits<Cost>::max();
  std::vector<int> machine_of(n, 0);
  for (;;) {
    bool feasible = true;
    std::vector<std::size_t> masks(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < n && feasible; ++i) {
      feasible = instance.allowed_on(instance.jobs()[i].id, machine_of[i]);
      masks[static_cast<std::size_t>(machine_of[i])] |= std::size_t{1} << i;
    }
    if (feasible) {
      Cost total = 0;
      for (std::size_t mask : masks) total += subset_best[mask];
      best = std::min(best, total);
    }
    // Next assignment in base-m counting order.
    std::size_t i = 0;
    while (i < n && ++machine_of[i] == m) machine_of[i++] = 0;
    if (i == n) break;
  }
  if (best == std::numeric_limits<Cost>::max()) throw InfeasibleError("no feasible assignment");
  return best;
}

}  // namespace cdd::oracle
