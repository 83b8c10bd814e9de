#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cdd::cli {

struct CheckOptions {
  std::string suite = "all";  // shift | global | parallel | dynamic | all
  std::size_t trials = 100;
  std::size_t max_n = 8;
  std::uint64_t seed = 0;
};

struct SuiteReport {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

// Throws std::invalid_argument for an unknown suite and cdd::LimitError when
// max_n exceeds what an explicitly requested oracle can enumerate. Under
// "all" the exhaustive suites are capped at their oracle limits instead.
// Failures print the counterexample to `out`.
std::vector<SuiteReport> run_check(const CheckOptions& options, std::ostream& out);

}  // namespace cdd::cli
