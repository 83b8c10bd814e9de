#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdd/core.hpp"
#include "cdd/single_machine.hpp"

namespace cdd {

/// Jobs per machine in processing order, with the machine's last
/// completion time at assignment (before any shifting).
struct MachineAssignment {
  std::vector<std::vector<JobId>> jobs;  // W_j^k
  std::vector<std::size_t> counts;       // n_j
  std::vector<Time> loads;               // M_j, 0 for an unused machine
};

/// Index of the least-loaded machine, restricted to `feasible` when it is
/// non-empty. Ties go to the lowest index. Throws InfeasibleError when no
/// machine qualifies.
std::size_t select_machine(std::span<const Time> loads, const std::vector<bool>& feasible = {});

/// Greedy list assignment of a sequence: every job goes to the feasible
/// machine whose last job completes earliest. Unused machines count as
/// load 0, so the first jobs land one per machine and start at
/// max(P, D) - P; later jobs are appended compactly.
MachineAssignment assign_jobs(const Instance& instance, const JobSequence& sequence);

struct ParallelResult {
  Schedule schedule;                // instance.machine_count() machines
  Cost total = 0;
  std::vector<Cost> machine_totals;
  MachineAssignment assignment;
};

struct ParallelOptions {
  bool concurrent = false;  // optimize machines on separate threads
};

/// Assigns with assign_jobs, then optimizes every machine's sub-sequence
/// independently with the logsearch single-machine optimizer.
ParallelResult optimize_parallel(const Instance& instance, const JobSequence& sequence,
                                 const ParallelOptions& options = {});

/// Buffer-reusing equivalent of optimize_parallel(...).total.
class ParallelScorer {
 public:
  explicit ParallelScorer(const Instance& instance);

  Cost operator()(std::span<const JobId> order);
  Cost by_index(std::span<const std::size_t> order);

 private:
  const Instance* instance_;
  SequenceScorer single_;
  std::vector<std::size_t> index_;
  std::vector<std::vector<std::size_t>> machines_;
  std::vector<Time> loads_;
  std::vector<bool> mask_;
};

}  // namespace cdd
