#include "cdd/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cdd {

namespace {

// Ids above this would make the dense id table unreasonably large.
constexpr JobId kMaxJobId = 1 << 24;

Cost checked_add(Cost a, Cost b) {
  Cost out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("penalty total exceeds 64-bit range");
  }
  return out;
}

Cost checked_mul(Cost a, Cost b) {
  Cost out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("penalty term exceeds 64-bit range");
  }
  return out;
}

}  // namespace

Instance::Instance(std::vector<Job> jobs, Time due_date, int machine_count,
                   std::optional<FeasibilityMatrix> feasibility)
    : jobs_(std::move(jobs)),
      due_date_(due_date),
      machine_count_(machine_count),
      feasibility_(std::move(feasibility)) {
  if (jobs_.empty()) throw StructuralError("instance needs at least one job");
  if (due_date_ < 0) throw StructuralError("due date must be nonnegative");
  if (machine_count_ < 1) throw StructuralError("machine count must be at least 1");

  JobId max_id = 0;
  for (const Job& j : jobs_) {
    if (j.id < 1 || j.id > kMaxJobId) {
      throw StructuralError("job id out of range: " + std::to_string(j.id));
    }
    if (j.processing_time < 1) {
      throw StructuralError("job " + std::to_string(j.id) + ": processing time must be >= 1");
    }
    if (j.early_penalty < 0 || j.tardy_penalty < 0) {
      throw StructuralError("job " + std::to_string(j.id) + ": penalties must be >= 0");
    }
    max_id = std::max(max_id, j.id);
  }
  slot_.assign(static_cast<std::size_t>(max_id) + 1, -1);
  for (std::size_t i = 0; i < jobs_.size(); ++i) {
    auto& s = slot_[static_cast<std::size_t>(jobs_[i].id)];
    if (s != -1) throw StructuralError("duplicate job id " + std::to_string(jobs_[i].id));
    s = static_cast<std::int32_t>(i);
  }

  if (feasibility_) {
    if (feasibility_->size() != jobs_.size()) {
      throw StructuralError("feasibility matrix needs one row per job");
    }
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      const auto& row = (*feasibility_)[i];
      if (row.size() != static_cast<std::size_t>(machine_count_)) {
        throw StructuralError("feasibility row width must equal machine count");
      }
      if (std::none_of(row.begin(), row.end(), [](bool b) { return b; })) {
        throw StructuralError("job " + std::to_string(jobs_[i].id) + " has no feasible machine");
      }
    }
  }

  // Any compact schedule reachable by the solvers starts in [0, D], so every
  // job has E_i <= D and T_i <= sum P. Reject instances whose worst case
  // cannot be accumulated in 64 bits.
  __int128 horizon = static_cast<__int128>(due_date_) + total_processing_time();
  __int128 bound = 0;
  for (const Job& j : jobs_) {
    bound += static_cast<__int128>(std::max(j.early_penalty, j.tardy_penalty)) * horizon;
    if (bound > std::numeric_limits<Cost>::max()) {
      throw StructuralError("instance penalties may overflow a 64-bit total");
    }
  }
}

bool Instance::contains(JobId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < slot_.size() &&
         slot_[static_cast<std::size_t>(id)] != -1;
}

std::size_t Instance::index_of(JobId id) const {
  if (!contains(id)) throw StructuralError("unknown job id " + std::to_string(id));
  return static_cast<std::size_t>(slot_[static_cast<std::size_t>(id)]);
}

bool Instance::allowed_on(JobId id, int machine) const {
  if (machine < 0 || machine >= machine_count_) return false;
  if (!feasibility_) return true;
  return (*feasibility_)[index_of(id)][static_cast<std::size_t>(machine)];
}

Time Instance::total_processing_time() const {
  return std::accumulate(jobs_.begin(), jobs_.end(), Time{0},
                         [](Time acc, const Job& j) { return acc + j.processing_time; });
}

Instance Instance::with_due_date(Time due_date) const {
  return Instance(jobs_, due_date, machine_count_, feasibility_);
}

Instance Instance::with_machine_count(int machine_count) const {
  if (machine_count == machine_count_) return *this;
  return Instance(jobs_, due_date_, machine_count);
}

JobSequence natural_sequence(const Instance& instance) {
  JobSequence seq;
  seq.order.reserve(instance.size());
  for (const Job& j : instance.jobs()) seq.order.push_back(j.id);
  return seq;
}

void validate_subsequence(const Instance& instance, const JobSequence& sequence) {
  std::vector<bool> seen(instance.size(), false);
  for (JobId id : sequence.order) {
    std::size_t i = instance.index_of(id);
    if (seen[i]) throw StructuralError("job " + std::to_string(id) + " appears twice");
    seen[i] = true;
  }
}

void validate_permutation(const Instance& instance, const JobSequence& sequence) {
  if (sequence.size() != instance.size()) {
    throw StructuralError("sequence has " + std::to_string(sequence.size()) +
                          " jobs, instance has " + std::to_string(instance.size()));
  }
  validate_subsequence(instance, sequence);
}

std::size_t Schedule::job_count() const {
  std::size_t n = 0;
  for (const auto& m : machines) n += m.size();
  return n;
}

void validate_schedule(const Instance& instance, const Schedule& schedule) {
  std::vector<bool> seen(instance.size(), false);
  std::size_t count = 0;
  for (const auto& machine : schedule.machines) {
    for (std::size_t k = 0; k < machine.size(); ++k) {
      const ScheduledJob& sj = machine[k];
      std::size_t i = instance.index_of(sj.job);
      if (seen[i]) throw StructuralError("job " + std::to_string(sj.job) + " scheduled twice");
      seen[i] = true;
      ++count;
      Time p = instance.jobs()[i].processing_time;
      if (k == 0) {
        if (sj.completion < p) {
          throw StructuralError("job " + std::to_string(sj.job) + " starts before time 0");
        }
      } else if (sj.completion != machine[k - 1].completion + p) {
        throw StructuralError("machine schedule is not compact at job " + std::to_string(sj.job));
      }
    }
  }
  if (count != instance.size()) {
    throw StructuralError("schedule covers " + std::to_string(count) + " of " +
                          std::to_string(instance.size()) + " jobs");
  }
}

PenaltyBreakdown evaluate_penalty(const Instance& instance, const Schedule& schedule) {
  validate_schedule(instance, schedule);
  PenaltyBreakdown out;
  out.per_job.reserve(instance.size());
  const Time d = instance.due_date();
  for (const auto& machine : schedule.machines) {
    for (const ScheduledJob& sj : machine) {
      const Job& job = instance.job(sj.job);
      JobPenalty jp{sj.job, std::max<Time>(0, d - sj.completion),
                    std::max<Time>(0, sj.completion - d)};
      out.total = checked_add(out.total, checked_mul(job.early_penalty, jp.earliness));
      out.total = checked_add(out.total, checked_mul(job.tardy_penalty, jp.tardiness));
      out.per_job.push_back(jp);
    }
  }
  return out;
}

Cost total_penalty(const Instance& instance, const Schedule& schedule) {
  return evaluate_penalty(instance, schedule).total;
}

ShiftState compute_shift_state(const Instance& instance, const MachineSchedule& machine) {
  ShiftState state;
  if (machine.empty()) return state;
  state.deviations.reserve(machine.size());
  state.signs.reserve(machine.size());
  for (const ScheduledJob& sj : machine) {
    const Job& job = instance.job(sj.job);
    Time dt = sj.completion - instance.due_date();
    state.deviations.push_back(dt);
    state.signs.push_back(dt <= 0 ? -job.early_penalty : job.tardy_penalty);
  }
  state.headroom = machine.front().completion - instance.job(machine.front().job).processing_time;
  if (state.headroom < 0) throw StructuralError("first job starts before time 0");
  return state;
}

ShiftState compute_shift_state(const Instance& instance, const Schedule& schedule) {
  if (schedule.machines.size() != 1) {
    throw StructuralError("shift state is defined for single-machine schedules");
  }
  return compute_shift_state(instance, schedule.machines.front());
}

Cost penalty_via_signs(const ShiftState& state) {
  Cost total = 0;
  for (std::size_t i = 0; i < state.deviations.size(); ++i) {
    total = checked_add(total, checked_mul(state.deviations[i], state.signs[i]));
  }
  return total;
}

}  // namespace cdd
