#include "cdd/parallel.hpp"

#include <algorithm>
#include <future>
#include <string>

namespace cdd {

namespace {

// Greedy placement shared by assign_jobs and ParallelScorer. `order` holds
// job indices; `machines` receives job indices per machine.
void assign_indices(const Instance& instance, std::span<const std::size_t> order,
                    std::vector<std::vector<std::size_t>>& machines, std::vector<Time>& loads,
                    std::vector<bool>& mask) {
  const auto m = static_cast<std::size_t>(instance.machine_count());
  machines.resize(m);
  for (auto& jobs : machines) jobs.clear();
  loads.assign(m, 0);
  const auto& feasibility = instance.feasibility();

  for (std::size_t idx : order) {
    const Job& job = instance.jobs()[idx];
    std::size_t target = 0;
    if (feasibility) {
      mask.assign((*feasibility)[idx].begin(), (*feasibility)[idx].end());
      try {
        target = select_machine(loads, mask);
      } catch (const InfeasibleError&) {
        throw InfeasibleError("job " + std::to_string(job.id) + " has no feasible machine");
      }
    } else {
      target = select_machine(loads);
    }
    if (machines[target].empty()) {
      loads[target] = std::max(job.processing_time, instance.due_date());
    } else {
      loads[target] += job.processing_time;
    }
    machines[target].push_back(idx);
  }
}

}  // namespace

std::size_t select_machine(std::span<const Time> loads, const std::vector<bool>& feasible) {
  if (!feasible.empty() && feasible.size() != loads.size()) {
    throw StructuralError("feasibility mask width must match machine count");
  }
  std::size_t best = loads.size();
  for (std::size_t j = 0; j < loads.size(); ++j) {
    if (!feasible.empty() && !feasible[j]) continue;
    if (best == loads.size() || loads[j] < loads[best]) best = j;
  }
  if (best == loads.size()) throw InfeasibleError("no feasible machine");
  return best;
}

MachineAssignment assign_jobs(const Instance& instance, const JobSequence& sequence) {
  validate_permutation(instance, sequence);
  std::vector<std::size_t> order;
  order.reserve(sequence.size());
  for (JobId id : sequence.order) order.push_back(instance.index_of(id));

  std::vector<std::vector<std::size_t>> machines;
  std::vector<bool> mask;
  MachineAssignment out;
  assign_indices(instance, order, machines, out.loads, mask);

  out.jobs.resize(machines.size());
  out.counts.resize(machines.size());
  for (std::size_t j = 0; j < machines.size(); ++j) {
    for (std::size_t idx : machines[j]) out.jobs[j].push_back(instance.jobs()[idx].id);
    out.counts[j] = machines[j].size();
  }
  return out;
}

ParallelResult optimize_parallel(const Instance& instance, const JobSequence& sequence,
                                 const ParallelOptions& options) {
  ParallelResult result;
  result.assignment = assign_jobs(instance, sequence);
  const std::size_t m = result.assignment.jobs.size();

  auto solve_machine = [&](std::size_t j) -> std::pair<MachineSchedule, Cost> {
    const auto& ids = result.assignment.jobs[j];
    if (ids.empty()) return {{}, 0};
    OptimizeResult r = optimize_sequence_logsearch(instance, JobSequence{ids});
    return {std::move(r.schedule.machines.front()), r.total};
  };

  std::vector<std::pair<MachineSchedule, Cost>> solved(m);
  if (options.concurrent && m > 1) {
    std::vector<std::future<std::pair<MachineSchedule, Cost>>> pending;
    pending.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      pending.push_back(std::async(std::launch::async, solve_machine, j));
    }
    for (std::size_t j = 0; j < m; ++j) solved[j] = pending[j].get();
  } else {
    for (std::size_t j = 0; j < m; ++j) solved[j] = solve_machine(j);
  }

  result.schedule.machines.resize(m);
  result.machine_totals.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    result.schedule.machines[j] = std::move(solved[j].first);
    result.machine_totals[j] = solved[j].second;
    result.total += solved[j].second;
  }
  return result;
}

ParallelScorer::ParallelScorer(const Instance& instance) : instance_(&instance), single_(instance) {
  index_.reserve(instance.size());
}

Cost ParallelScorer::operator()(std::span<const JobId> order) {
  index_.clear();
  for (JobId id : order) index_.push_back(instance_->index_of(id));
  return by_index(index_);
}

Cost ParallelScorer::by_index(std::span<const std::size_t> order) {
  assign_indices(*instance_, order, machines_, loads_, mask_);
  Cost total = 0;
  for (const auto& jobs : machines_) {
    if (!jobs.empty()) total += single_.by_index(jobs);
  }
  return total;
}

}  // namespace cdd
