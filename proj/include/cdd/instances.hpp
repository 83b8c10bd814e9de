#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdd/core.hpp"
#include "cdd/random.hpp"

namespace cdd {

/// Exact non-negative fraction, kept in lowest terms. Parses "0.2", "2/10",
/// "16/21" or "1" without going through binary floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(std::string_view text);
  // Decimal when the value has a finite decimal expansion, else "num/den".
  std::string to_string() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t token_position)
      : std::runtime_error(message + " (token " + std::to_string(token_position) + ")"),
        token_position_(token_position) {}

  // 1-based index of the offending token; one past the end for truncation.
  std::size_t token_position() const { return token_position_; }

 private:
  std::size_t token_position_;
};

struct RawInstance {
  std::size_t index = 0;  // k, 1-based file order
  std::vector<Job> jobs;  // ids 1..n in file order
};

struct RawInstanceSet {
  std::vector<RawInstance> entries;
};

/// OR-library "sch" layout: instance count K, then per instance n followed
/// by n triples "P alpha beta". Any whitespace (including CRLF) separates
/// tokens.
RawInstanceSet parse_orlib(std::string_view text);
RawInstanceSet load_orlib(const std::filesystem::path& path);
std::string serialize_orlib(const RawInstanceSet& set);

/// floor(h * total_processing / machines), computed exactly.
Time compute_due_date(const Rational& h, Time total_processing, int machines);

struct BenchmarkSpec {
  Rational restrictive_factor{1, 5};
  int machine_count = 1;
  std::size_t index = 1;  // k
  std::size_t job_count = 0;
};

Instance make_benchmark_instance(const RawInstance& raw, const Rational& h, int machines);
// Looks up entry `spec.index`; throws std::out_of_range when absent and
// StructuralError when spec.job_count is set and disagrees with the entry.
Instance make_benchmark_instance(const RawInstanceSet& set, const BenchmarkSpec& spec);

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct GenerationRanges {
  IntRange processing{1, 20};
  IntRange early{1, 10};
  IntRange tardy{1, 15};
};

/// Jobs 1..n with uniform independent draws from `ranges`; due date from
/// compute_due_date(h, sum P, machines).
Instance generate_random_instance(std::size_t n, Rng& rng, const GenerationRanges& ranges = {},
                                  const Rational& h = Rational{2, 5}, int machines = 1);

}  // namespace cdd
