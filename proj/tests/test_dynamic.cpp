#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdd/dynamic.hpp"
#include "support.hpp"

using namespace cdd;

namespace {

Instance five_jobs_plus_arrival() {
  std::vector<test::Row> rows = test::kFiveJobs;
  rows.push_back({3, 1, 10});
  return Instance(test::jobs_from(rows), 16);
}

}  // namespace

TEST_CASE("one arrival appended to the five-job optimum") {
  const Instance inst = five_jobs_plus_arrival();
  const OptimizeResult base = optimize_sequence_linear(inst, JobSequence{{1, 2, 3, 4, 5}});
  REQUIRE(base.total == 81);

  const DynamicResult r = extend_and_reoptimize(inst, base, JobSequence{{6}});
  CHECK(r.total == 205);
  CHECK(r.gamma == 2);
  CHECK(test::completions(r.schedule) == std::vector<Time>{9, 14, 16, 20, 24, 27});
  CHECK(test::job_ids(r.schedule) == std::vector<JobId>{1, 2, 3, 4, 5, 6});

  // Shift grid over the compact six-job block, computed independently.
  std::vector<test::Row> rows = test::kFiveJobs;
  rows.push_back({3, 1, 10});
  CHECK(test::shift_grid_min(rows, {0, 1, 2, 3, 4, 5}, 16) == 205);

  const DynamicResult fresh = reoptimize_from_scratch(inst, base, JobSequence{{6}});
  CHECK(fresh.total == 205);
  CHECK(fresh.gamma == 2);
  CHECK(fresh.schedule == r.schedule);
}

TEST_CASE("no arrivals leaves the base untouched") {
  const Instance inst = test::five_jobs();
  const OptimizeResult base = optimize_sequence_linear(inst, JobSequence{{1, 2, 3, 4, 5}});
  const DynamicResult r = extend_and_reoptimize(inst, base, JobSequence{});
  CHECK(r.total == base.total);
  CHECK(r.gamma == 0);
  CHECK(r.schedule == base.schedule);
}

TEST_CASE("arrivals must be new jobs") {
  const Instance inst = five_jobs_plus_arrival();
  const OptimizeResult base = optimize_sequence_linear(inst, JobSequence{{1, 2, 3, 4, 5}});
  CHECK_THROWS_AS(extend_and_reoptimize(inst, base, JobSequence{{3}}), StructuralError);
  CHECK_THROWS_AS(extend_and_reoptimize(inst, base, JobSequence{{6, 6}}), StructuralError);
  CHECK_THROWS_AS(extend_and_reoptimize(inst, base, JobSequence{{7}}), StructuralError);
}

TEST_CASE("extension equals a fresh run on random splits") {
  test::Gen gen(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto total = static_cast<std::size_t>(gen.uniform(2, 60));
    const auto added = static_cast<std::size_t>(gen.uniform(1, static_cast<std::int64_t>(total) - 1));
    const auto rows = gen.rows(total);
    const Time due = gen.due_for(rows);
    const Instance inst(test::jobs_from(rows), due);
    const std::vector<JobId> all = gen.shuffled_ids(total);
    const JobSequence original{{all.begin(), all.end() - static_cast<std::ptrdiff_t>(added)}};
    const JobSequence arrivals{{all.end() - static_cast<std::ptrdiff_t>(added), all.end()}};
    CAPTURE(trial);

    const OptimizeResult base = optimize_sequence_linear(inst, original);
    const DynamicResult r = extend_and_reoptimize(inst, base, arrivals);
    const OptimizeResult fresh = optimize_sequence_linear(inst, JobSequence{all});
    CHECK(r.total == fresh.total);
    CHECK(r.schedule == fresh.schedule);
    CHECK(r.gamma >= 0);
    CHECK(r.total >= base.total);
    CHECK(r.total == test::shift_grid_min(rows, test::to_positions(all), due));
    CHECK(total_penalty(inst, r.schedule) == r.total);
    CHECK(penalty_via_signs(compute_shift_state(inst, r.schedule)) == r.total);

    // The original block moved left by gamma; arrivals follow compactly.
    const auto c_base = test::completions(base.schedule);
    const auto c = test::completions(r.schedule);
    const std::size_t n = original.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(c[i] == c_base[i] - r.gamma);
    Time expect = c_base[n - 1] - r.gamma;
    for (std::size_t k = n; k < total; ++k) {
      expect += rows[static_cast<std::size_t>(all[k] - 1)].p;
      CHECK(c[k] == expect);
    }

    const DynamicResult scratch = reoptimize_from_scratch(inst, base, arrivals);
    CHECK(scratch.gamma == r.gamma);
  }
}
