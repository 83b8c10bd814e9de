#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "cdd/cli/gantt.hpp"
#include "cdd/core.hpp"
#include "cdd/metaheuristic.hpp"

namespace cdd::cli {

// Result files that do not follow docs/result-format.md.
class ResultFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kResultSchema = "cdd.result.v1";

struct SolveRecord {
  nlohmann::ordered_json config;  // effective configuration, defaults resolved
  const Instance* instance = nullptr;
  JobSequence sequence;
  Schedule schedule;
  Cost total = 0;
  std::vector<Cost> machine_totals;
  std::optional<std::vector<Cost>> trace;  // single-machine exact runs
  std::optional<AnnealResult> search;      // anneal runs
};

nlohmann::ordered_json to_json(const SolveRecord& record);

// Reads the due date and per-machine spans back from a result document.
GanttChart gantt_from_result(const nlohmann::json& result);

}  // namespace cdd::cli
