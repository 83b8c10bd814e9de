#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdd {

using Time = std::int64_t;
using Cost = std::int64_t;
using JobId = int;

// Input or schedule does not match the instance it is evaluated against.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// No feasible machine exists for some job.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive oracle was asked for more than it can enumerate.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct Job {
  JobId id = 0;
  Time processing_time = 1;  // P_i
  Cost early_penalty = 0;    // alpha_i, per unit of earliness
  Cost tardy_penalty = 0;    // beta_i, per unit of tardiness

  friend bool operator==(const Job&, const Job&) = default;
};

/// Feasibility mask, row per job (instance order), column per machine.
using FeasibilityMatrix = std::vector<std::vector<bool>>;

/// A job set against a common due date on `machine_count` machines.
///
/// Construction validates every invariant (unique positive ids, positive
/// processing times, nonnegative penalties, a feasible machine per job) and
/// checks that the worst-case penalty of any compact schedule fits in a
/// signed 64-bit total.
class Instance {
 public:
  Instance(std::vector<Job> jobs, Time due_date, int machine_count = 1,
           std::optional<FeasibilityMatrix> feasibility = std::nullopt);

  const std::vector<Job>& jobs() const { return jobs_; }
  std::size_t size() const { return jobs_.size(); }
  Time due_date() const { return due_date_; }
  int machine_count() const { return machine_count_; }
  const std::optional<FeasibilityMatrix>& feasibility() const { return feasibility_; }

  bool contains(JobId id) const;
  // Position of `id` in jobs(); throws StructuralError for unknown ids.
  std::size_t index_of(JobId id) const;
  const Job& job(JobId id) const { return jobs_[index_of(id)]; }
  bool allowed_on(JobId id, int machine) const;
  Time total_processing_time() const;

  // Same jobs, different due date / machine count. Feasibility is dropped
  // when the machine count changes.
  Instance with_due_date(Time due_date) const;
  Instance with_machine_count(int machine_count) const;

 private:
  std::vector<Job> jobs_;
  Time due_date_;
  int machine_count_;
  std::optional<FeasibilityMatrix> feasibility_;
  std::vector<std::int32_t> slot_;  // id -> position, -1 when absent
};

/// Processing order of jobs, by id.
struct JobSequence {
  std::vector<JobId> order;

  std::size_t size() const { return order.size(); }
  bool empty() const { return order.empty(); }
  friend bool operator==(const JobSequence&, const JobSequence&) = default;
};

// Identity order of the instance's jobs.
JobSequence natural_sequence(const Instance& instance);
// Throws StructuralError unless `sequence` is a permutation of the instance.
void validate_permutation(const Instance& instance, const JobSequence& sequence);
// Throws StructuralError unless ids are distinct and known to the instance.
void validate_subsequence(const Instance& instance, const JobSequence& sequence);

struct ScheduledJob {
  JobId job = 0;
  Time completion = 0;

  friend bool operator==(const ScheduledJob&, const ScheduledJob&) = default;
};

using MachineSchedule = std::vector<ScheduledJob>;

struct Schedule {
  std::vector<MachineSchedule> machines;

  std::size_t job_count() const;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Throws StructuralError when the schedule does not cover exactly the
// instance's jobs, or a machine is not compact (C_next = C_prev + P_next,
// first C >= P).
void validate_schedule(const Instance& instance, const Schedule& schedule);

struct JobPenalty {
  JobId job = 0;
  Time earliness = 0;
  Time tardiness = 0;
};

struct PenaltyBreakdown {
  std::vector<JobPenalty> per_job;  // schedule order, machine by machine
  Cost total = 0;
};

/// Direct objective: sum of alpha_i * E_i + beta_i * T_i.
PenaltyBreakdown evaluate_penalty(const Instance& instance, const Schedule& schedule);
Cost total_penalty(const Instance& instance, const Schedule& schedule);

/// Deviation/sign view of one machine's schedule.
struct ShiftState {
  std::vector<Time> deviations;  // DT_i = C_i - D
  std::vector<Cost> signs;       // -alpha_i when DT_i <= 0, else beta_i
  Time headroom = 0;             // ES = C_1 - P_1
};

ShiftState compute_shift_state(const Instance& instance, const MachineSchedule& machine);
ShiftState compute_shift_state(const Instance& instance, const Schedule& schedule);

/// Sum of DT_i * PL_i; equals evaluate_penalty().total on the same machine.
Cost penalty_via_signs(const ShiftState& state);

}  // namespace cdd
