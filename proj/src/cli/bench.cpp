#include "cdd/cli/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cdd/metaheuristic.hpp"

namespace cdd::cli {

namespace {

bool rational_less(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

struct Cell {
  const RawInstance* raw;
  Rational h;
  std::uint64_t seed;
};

BenchRow run_cell(const Cell& cell, const BenchOptions& options) {
  const Instance instance = make_benchmark_instance(*cell.raw, cell.h, options.machines);
  AnnealConfig config;
  config.seed = cell.seed;
  config.max_iterations = options.iterations;
  config.ensemble_size = options.ensemble;
  config.threads = options.chain_threads;
  const auto mode = options.machines > 1 ? AnnealMode::parallel : AnnealMode::single;

  const auto start = std::chrono::steady_clock::now();
  const AnnealResult result = anneal(instance, config, mode);
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;

  BenchRow row;
  row.n = instance.size();
  row.k = cell.raw->index;
  row.h = cell.h;
  row.m = options.machines;
  row.seed = cell.seed;
  row.best_total = result.best_total;
  row.iterations_used = result.iterations_used;
  if (options.wall_clock) row.wall_ms = elapsed.count();
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const RawInstanceSet& set, const BenchOptions& options) {
  if (options.seeds.empty()) throw std::invalid_argument("seed list is empty");
  if (options.h_list.empty()) throw std::invalid_argument("h list is empty");
  if (options.machines < 1) throw std::invalid_argument("machine count must be positive");

  std::vector<const RawInstance*> selected;
  if (options.indices.empty()) {
    for (const RawInstance& raw : set.entries) selected.push_back(&raw);
  } else {
    for (std::size_t k : options.indices) {
      if (k < 1 || k > set.entries.size()) {
        throw std::out_of_range("instance index " + std::to_string(k) + " not in file");
      }
      selected.push_back(&set.entries[k - 1]);
    }
  }

  std::vector<Cell> cells;
  for (const RawInstance* raw : selected) {
    for (const Rational& h : options.h_list) {
      for (std::uint64_t seed : options.seeds) cells.push_back({raw, h, seed});
    }
  }

  std::vector<BenchRow> rows(cells.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, cells.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = run_cell(cells[i], options);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
          try {
            rows[i] = run_cell(cells[i], options);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (std::tie(a.n, a.k) != std::tie(b.n, b.k)) return std::tie(a.n, a.k) < std::tie(b.n, b.k);
    if (a.h != b.h) return rational_less(a.h, b.h);
    return std::tie(a.m, a.seed) < std::tie(b.m, b.seed);
  });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,k,h,m,seed,best_total,iterations_used,wall_ms\n";
  for (const BenchRow& r : rows) {
    out << r.n << ',' << r.k << ',' << r.h.to_string() << ',' << r.m << ',' << r.seed << ','
        << r.best_total << ',' << r.iterations_used << ',';
    if (r.wall_ms) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", *r.wall_ms);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::vector<Rational> hs;
  for (const BenchRow& r : rows) {
    if (std::find(hs.begin(), hs.end(), r.h) == hs.end()) hs.push_back(r.h);
  }
  std::sort(hs.begin(), hs.end(), rational_less);

  // (n, k, m) -> best per h column
  std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<std::optional<Cost>>> grid;
  for (const BenchRow& r : rows) {
    auto& line = grid[{r.n, r.k, r.m}];
    line.resize(hs.size());
    auto col = static_cast<std::size_t>(std::find(hs.begin(), hs.end(), r.h) - hs.begin());
    if (!line[col] || r.best_total < *line[col]) line[col] = r.best_total;
  }

  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%5s %4s %3s", "n", "k", "m");
  out << buf;
  for (const Rational& h : hs) {
    std::snprintf(buf, sizeof buf, " %10s", ("h=" + h.to_string()).c_str());
    out << buf;
  }
  out << '\n';
  for (const auto& [key, line] : grid) {
    std::snprintf(buf, sizeof buf, "%5zu %4zu %3d", std::get<0>(key), std::get<1>(key), std::get<2>(key));
    out << buf;
    for (const auto& value : line) {
      if (value) {
        std::snprintf(buf, sizeof buf, " %10lld", static_cast<long long>(*value));
      } else {
        std::snprintf(buf, sizeof buf, " %10s", "-");
      }
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cdd::cli
