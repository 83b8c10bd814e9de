#pragma once

#include <vector>

#include "cdd/core.hpp"
#include "cdd/single_machine.hpp"

namespace cdd {

/// Re-optimized schedule for the original jobs J followed by arrivals J'.
struct DynamicResult {
  Schedule schedule;        // single machine, J then J'
  Cost total = 0;
  Time gamma = 0;           // further uniform left shift of the original jobs
  std::vector<Cost> trace;  // objective after appending, then each resumed step
};

/// Appends `arrivals` compactly after the last job of `base` and resumes the
/// left-shift loop from the breakpoint where `base` stopped. `base` must be
/// the single-machine optimum of J against instance.due_date() (as returned
/// by optimize_sequence_linear or optimize_sequence_logsearch); the instance
/// must contain J and J'. Throws StructuralError when J and J' share a job.
DynamicResult extend_and_reoptimize(const Instance& instance, const OptimizeResult& base,
                                    const JobSequence& arrivals);

/// Reference path: optimize_sequence_linear on J+J' from scratch, with gamma
/// measured against the base schedule.
DynamicResult reoptimize_from_scratch(const Instance& instance, const OptimizeResult& base,
                                      const JobSequence& arrivals);

}  // namespace cdd
