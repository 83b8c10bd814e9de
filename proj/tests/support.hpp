#pragma once

// Test-side references. Nothing here calls into the solvers; the helpers
// rebuild schedules from scratch so library results can be checked against
// values computed independently.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cdd/core.hpp"

namespace cdd::test {

struct Row {
  Time p;
  Cost alpha;
  Cost beta;
};

// Jobs 1..5 of the five-job worked example.
inline const std::vector<Row> kFiveJobs = {{6, 7, 9}, {5, 9, 5}, {2, 6, 4}, {4, 9, 3}, {4, 3, 2}};

inline std::vector<Job> jobs_from(const std::vector<Row>& rows) {
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    jobs.push_back({static_cast<JobId>(i + 1), rows[i].p, rows[i].alpha, rows[i].beta});
  }
  return jobs;
}

inline Instance five_jobs(Time due_date = 16, int machines = 1) {
  return Instance(jobs_from(kFiveJobs), due_date, machines);
}

inline Schedule one_machine(const std::vector<JobId>& order, const std::vector<Time>& completions) {
  MachineSchedule m;
  for (std::size_t i = 0; i < order.size(); ++i) m.push_back({order[i], completions[i]});
  return Schedule{{m}};
}

inline std::vector<Time> completions(const Schedule& s, std::size_t machine = 0) {
  std::vector<Time> c;
  for (const ScheduledJob& sj : s.machines.at(machine)) c.push_back(sj.completion);
  return c;
}

inline std::vector<JobId> job_ids(const Schedule& s, std::size_t machine = 0) {
  std::vector<JobId> ids;
  for (const ScheduledJob& sj : s.machines.at(machine)) ids.push_back(sj.job);
  return ids;
}

// sum alpha*max(0, D-C) + beta*max(0, C-D) over a plain list of jobs.
inline Cost direct_cost(const std::vector<Row>& rows, const std::vector<std::size_t>& order,
                        const std::vector<Time>& c, Time due) {
  Cost total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Row& r = rows[order[i]];
    total += c[i] < due ? r.alpha * (due - c[i]) : r.beta * (c[i] - due);
  }
  return total;
}

// Every integer left shift of the compact block that starts with its first
// job ending at max(P, D); returns the minimum cost.
inline Cost shift_grid_min(const std::vector<Row>& rows, const std::vector<std::size_t>& order, Time due) {
  if (order.empty()) return 0;
  const Time first = std::max(rows[order[0]].p, due);
  Cost best = std::numeric_limits<Cost>::max();
  for (Time s = 0; s <= first - rows[order[0]].p; ++s) {
    std::vector<Time> c;
    Time t = first - s;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0) t += rows[order[i]].p;
      c.push_back(t);
    }
    best = std::min(best, direct_cost(rows, order, c, due));
  }
  return best;
}

inline Cost permutation_min(const std::vector<Row>& rows, Time due) {
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Cost best = std::numeric_limits<Cost>::max();
  do {
    best = std::min(best, shift_grid_min(rows, order, due));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Independent generator for test inputs (std::mt19937 rather than cdd::Rng).
struct Gen {
  explicit Gen(std::uint32_t seed) : engine(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine);
  }

  std::vector<Row> rows(std::size_t n, Time max_p = 20) {
    std::vector<Row> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({uniform(1, max_p), uniform(1, 10), uniform(1, 15)});
    return out;
  }

  // Due date floor(h * sum P) for h drawn from tenths in [0.1, 1.2].
  Time due_for(const std::vector<Row>& rows) {
    Time total = 0;
    for (const Row& r : rows) total += r.p;
    return total * uniform(1, 12) / 10;
  }

  std::vector<JobId> shuffled_ids(std::size_t n) {
    std::vector<JobId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<JobId>(i + 1);
    std::shuffle(ids.begin(), ids.end(), engine);
    return ids;
  }

  std::mt19937 engine;
};

inline std::vector<std::size_t> to_positions(const std::vector<JobId>& ids) {
  std::vector<std::size_t> out;
  for (JobId id : ids) out.push_back(static_cast<std::size_t>(id - 1));
  return out;
}

}  // namespace cdd::test
