#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "cdd/oracle.hpp"
#include "cdd/parallel.hpp"
#include "support.hpp"

using namespace cdd;
using cdd::test::five_jobs;

TEST_CASE("machine selection") {
  const std::vector<Time> equal{16, 16};
  CHECK(select_machine(equal) == 0);
  const std::vector<Time> second{18, 16};
  CHECK(select_machine(second) == 1);
  const std::vector<Time> masked{16, 20};
  CHECK(select_machine(masked, {false, true}) == 1);
  CHECK_THROWS_AS(select_machine(masked, {false, false}), InfeasibleError);
  CHECK_THROWS_AS(select_machine(std::vector<Time>{}), InfeasibleError);
}

TEST_CASE("assignment of the five-job example to two machines") {
  const MachineAssignment a = assign_jobs(five_jobs(16, 2), JobSequence{{1, 2, 3, 4, 5}});
  REQUIRE(a.jobs.size() == 2);
  CHECK(a.jobs[0] == std::vector<JobId>{1, 3, 5});
  CHECK(a.jobs[1] == std::vector<JobId>{2, 4});
  CHECK(a.counts == std::vector<std::size_t>{3, 2});
  CHECK(a.loads == std::vector<Time>{22, 20});
}

TEST_CASE("assignment edge cases") {
  const MachineAssignment one = assign_jobs(five_jobs(16, 1), JobSequence{{3, 1, 2, 5, 4}});
  CHECK(one.jobs.size() == 1);
  CHECK(one.jobs[0] == std::vector<JobId>{3, 1, 2, 5, 4});

  const Instance two({{1, 6, 1, 1}, {2, 20, 1, 1}}, 16, 2);
  const MachineAssignment a = assign_jobs(two, JobSequence{{1, 2}});
  CHECK(a.jobs[0] == std::vector<JobId>{1});
  CHECK(a.jobs[1] == std::vector<JobId>{2});
  CHECK(a.loads == std::vector<Time>{16, 20});

  // More machines than jobs: surplus machines stay empty.
  const MachineAssignment wide = assign_jobs(five_jobs(16, 7), JobSequence{{1, 2, 3, 4, 5}});
  CHECK(wide.counts == std::vector<std::size_t>{1, 1, 1, 1, 1, 0, 0});
  CHECK(wide.loads[6] == 0);
}

TEST_CASE("feasibility masks steer seeding and the greedy step") {
  // Job 1 only on machine 2, job 3 only on machine 1.
  const Instance inst(test::jobs_from(test::kFiveJobs), 16, 2,
                      FeasibilityMatrix{{false, true}, {true, true}, {true, false}, {true, true}, {true, true}});
  const MachineAssignment a = assign_jobs(inst, JobSequence{{1, 2, 3, 4, 5}});
  for (std::size_t m = 0; m < a.jobs.size(); ++m) {
    for (JobId id : a.jobs[m]) CHECK(inst.allowed_on(id, static_cast<int>(m)));
  }
  CHECK(a.jobs[1].front() == 1);
}

TEST_CASE("parallel optimum of the five-job example") {
  const ParallelResult r = optimize_parallel(five_jobs(16, 2), JobSequence{{1, 2, 3, 4, 5}});
  CHECK(r.total == 32);
  CHECK(r.machine_totals == std::vector<Cost>{20, 12});
  // independent per-machine checks
  CHECK(test::shift_grid_min(test::kFiveJobs, {0, 2, 4}, 16) == 20);
  CHECK(test::shift_grid_min(test::kFiveJobs, {1, 3}, 16) == 12);
  CHECK(test::job_ids(r.schedule, 0) == std::vector<JobId>{1, 3, 5});
  CHECK(test::completions(r.schedule, 0) == std::vector<Time>{16, 18, 22});
  CHECK(total_penalty(five_jobs(16, 2), r.schedule) == 32);

  const ParallelResult c = optimize_parallel(five_jobs(16, 2), JobSequence{{1, 2, 3, 4, 5}}, {true});
  CHECK(c.schedule == r.schedule);
  CHECK(c.total == r.total);
}

TEST_CASE("parallel properties on random sequences") {
  test::Gen gen(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.uniform(1, 40));
    const auto m = static_cast<int>(gen.uniform(1, 5));
    const auto rows = gen.rows(n);
    Time total = 0;
    for (const auto& r : rows) total += r.p;
    const Time due = total * gen.uniform(1, 10) / 10 / m;
    const Instance inst(test::jobs_from(rows), due, m);
    const JobSequence seq{gen.shuffled_ids(n)};
    CAPTURE(trial);

    const ParallelResult r = optimize_parallel(inst, seq);
    CHECK(r.schedule.machines.size() == static_cast<std::size_t>(m));
    CHECK(total_penalty(inst, r.schedule) == r.total);

    // Partition and order preservation.
    std::map<JobId, std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) position[seq.order[i]] = i;
    std::size_t count = 0;
    Cost sum = 0;
    for (std::size_t k = 0; k < r.assignment.jobs.size(); ++k) {
      const auto& jobs = r.assignment.jobs[k];
      count += jobs.size();
      for (std::size_t i = 1; i < jobs.size(); ++i) CHECK(position[jobs[i - 1]] < position[jobs[i]]);
      CHECK(test::job_ids(r.schedule, k) == jobs);
      sum += test::shift_grid_min(rows, test::to_positions(jobs), due);
      CHECK(r.machine_totals[k] == test::shift_grid_min(rows, test::to_positions(jobs), due));
    }
    CHECK(count == n);
    CHECK(sum == r.total);

    // Greedy choice: replay the loads and check every job went to a least-loaded machine.
    std::vector<Time> loads(static_cast<std::size_t>(m), 0);
    std::vector<std::size_t> machine_of(n + 1);
    for (std::size_t k = 0; k < r.assignment.jobs.size(); ++k) {
      for (JobId id : r.assignment.jobs[k]) machine_of[static_cast<std::size_t>(id)] = k;
    }
    for (JobId id : seq.order) {
      const std::size_t k = machine_of[static_cast<std::size_t>(id)];
      const Time least = *std::min_element(loads.begin(), loads.end());
      CHECK(loads[k] == least);
      for (std::size_t j = 0; j < k; ++j) CHECK(loads[j] > least);
      const Time p = rows[static_cast<std::size_t>(id - 1)].p;
      loads[k] = loads[k] == 0 ? std::max(p, due) : loads[k] + p;
    }
    CHECK(loads == r.assignment.loads);

    ParallelScorer score(inst);
    CHECK(score(seq.order) == r.total);
  }
}

TEST_CASE("one machine reduces to the single-machine optimizer") {
  test::Gen gen(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.uniform(1, 30));
    const auto rows = gen.rows(n);
    const Instance inst(test::jobs_from(rows), gen.due_for(rows), 1);
    const JobSequence seq{gen.shuffled_ids(n)};
    const ParallelResult p = optimize_parallel(inst, seq);
    const OptimizeResult s = optimize_sequence_logsearch(inst, seq);
    CHECK(p.total == s.total);
    CHECK(p.schedule == s.schedule);
  }
}

TEST_CASE("greedy parallel totals never beat the exhaustive optimum") {
  test::Gen gen(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(gen.uniform(1, 6));
    const auto rows = gen.rows(n);
    Time total = 0;
    for (const auto& r : rows) total += r.p;
    const Instance inst(test::jobs_from(rows), total * gen.uniform(1, 10) / 20, 2);
    const JobSequence seq{gen.shuffled_ids(n)};
    CHECK(optimize_parallel(inst, seq).total >= oracle::global_optimum_parallel(inst));
  }
}
