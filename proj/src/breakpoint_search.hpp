#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cdd/core.hpp"

namespace cdd::detail {

// Objective of a compact block whose jobs (indices into `jobs`) initially
// complete at `c0`, after a uniform left shift `s`.
inline Cost shifted_block_value(const std::vector<Job>& jobs, std::span<const std::size_t> order,
                                std::span<const Time> c0, Time due_date, Time s) {
  Cost total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Job& job = jobs[order[i]];
    Time dt = c0[i] - s - due_date;
    total += dt <= 0 ? -dt * job.early_penalty : dt * job.tardy_penalty;
  }
  return total;
}

// Cumulative shift reached after breakpoint j: min(ES, DT_j) measured on
// the initial compact schedule.
inline Time breakpoint_shift(std::span<const Time> c0, Time headroom0, Time due_date, std::size_t j) {
  return std::min(headroom0, c0[j] - due_date);
}

// V_0..V_{n-1} is unimodal (a convex function sampled at nondecreasing
// shifts). Finds the smallest j whose right neighbour is not strictly
// smaller, i.e. where the linear loop would stop. `value_at(j)` is invoked
// at most once per index; `cache` receives (j, V_j) in evaluation order.
template <class ValueAt>
std::size_t find_breakpoint_minimum(std::size_t n, ValueAt&& value_at,
                                    std::vector<std::pair<std::size_t, Cost>>& cache) {
  cache.clear();
  auto value = [&](std::size_t j) {
    for (const auto& [k, v] : cache) {
      if (k == j) return v;
    }
    Cost v = value_at(j);
    cache.emplace_back(j, v);
    return v;
  };
  // Non-negative slope (including a plateau) means the minimum is at or
  // left of j.
  auto stops_at = [&](std::size_t j) {
    Cost here = value(j);
    if (j + 1 >= n) return true;
    return value(j + 1) >= here;
  };

  if (stops_at(0)) return 0;
  std::size_t lo = 0;  // invariant: stops_at(lo) is false
  std::size_t hi = 1;
  while (!stops_at(hi)) {
    lo = hi;
    hi = std::min(2 * hi, n - 1);
  }
  // stops_at(hi) is true; find the first such index in (lo, hi].
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (stops_at(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace cdd::detail
