#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdd/core.hpp"
#include "cdd/instances.hpp"

namespace cdd::cli {

struct BenchOptions {
  std::vector<Rational> h_list;
  int machines = 1;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> indices;  // k values to run, empty = every entry
  std::size_t iterations = 0;        // 0 = annealing default
  std::size_t ensemble = 0;
  std::size_t threads = 1;        // (instance, h, seed) cells run concurrently
  std::size_t chain_threads = 1;  // threads inside one annealing run
  bool wall_clock = false;  // wall_ms stays empty unless set
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t k = 0;
  Rational h;
  int m = 1;
  std::uint64_t seed = 0;
  Cost best_total = 0;
  std::size_t iterations_used = 0;
  std::optional<double> wall_ms;
};

// Rows in canonical (n, k, h, m, seed) order regardless of options.threads.
std::vector<BenchRow> run_bench(const RawInstanceSet& set, const BenchOptions& options);

std::string bench_csv(const std::vector<BenchRow>& rows);

// Best total over seeds, one line per (n, k) and one column per h.
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace cdd::cli
