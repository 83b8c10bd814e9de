#pragma once

#include <cstddef>

#include "cdd/core.hpp"

// Exhaustive references for testing the solvers. Everything here builds
// explicit compact schedules and scores them with evaluate_penalty only.
//
// Integral shifts are sufficient: with integral P and D the objective of a
// uniformly shifted compact block is piecewise linear in the shift with
// integer breakpoints, so its minimum over [0, ES] sits on an integer.
namespace cdd::oracle {

inline constexpr std::size_t kMaxGlobalSingleJobs = 9;
inline constexpr std::size_t kMaxParallelJobs = 6;
inline constexpr int kMaxParallelMachines = 3;

struct ShiftSearch {
  Cost total = 0;
  Time shift = 0;     // smallest minimizing left shift
  Schedule schedule;  // the minimizing schedule
};

/// Minimum over every integer left shift s in [0, ES] of the compact
/// schedule whose first job completes at max(P_1, D). `sequence` must be a
/// permutation of the instance's jobs.
ShiftSearch best_shift_search(const Instance& instance, const JobSequence& sequence);
Cost best_shift_bruteforce(const Instance& instance, const JobSequence& sequence);

/// Minimum of best_shift_bruteforce over all n! orders. Throws LimitError
/// above kMaxGlobalSingleJobs jobs.
Cost global_optimum_single(const Instance& instance);

/// Minimum over every assignment of jobs to feasible machines and every
/// order on each machine. Throws LimitError above kMaxParallelJobs jobs or
/// kMaxParallelMachines machines.
Cost global_optimum_parallel(const Instance& instance);

}  // namespace cdd::oracle
