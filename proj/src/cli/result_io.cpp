#include "cdd/cli/result_io.hpp"

namespace cdd::cli {

using nlohmann::ordered_json;

ordered_json to_json(const SolveRecord& record) {
  const Instance& instance = *record.instance;
  ordered_json doc;
  doc["schema"] = kResultSchema;
  doc["config"] = record.config;

  ordered_json jobs = ordered_json::array();
  for (const Job& j : instance.jobs()) {
    jobs.push_back({{"id", j.id},
                    {"processing_time", j.processing_time},
                    {"early_penalty", j.early_penalty},
                    {"tardy_penalty", j.tardy_penalty}});
  }
  doc["instance"] = {{"due_date", instance.due_date()},
                     {"machine_count", instance.machine_count()},
                     {"jobs", std::move(jobs)}};

  doc["best_total"] = record.total;
  doc["sequence"] = record.sequence.order;
  doc["machine_totals"] = record.machine_totals;

  ordered_json machines = ordered_json::array();
  for (std::size_t m = 0; m < record.schedule.machines.size(); ++m) {
    ordered_json row = ordered_json::array();
    for (const ScheduledJob& sj : record.schedule.machines[m]) {
      row.push_back({{"id", sj.job},
                     {"start", sj.completion - instance.job(sj.job).processing_time},
                     {"completion", sj.completion}});
    }
    machines.push_back({{"machine", m + 1}, {"jobs", std::move(row)}});
  }
  doc["machines"] = std::move(machines);

  if (record.trace) doc["trace"] = *record.trace;
  if (record.search) {
    ordered_json history = ordered_json::array();
    for (const auto& [it, total] : record.search->history) history.push_back({it, total});
    doc["search"] = {{"iterations_used", record.search->iterations_used},
                     {"initial_temperature", record.search->initial_temperature},
                     {"history", std::move(history)}};
  }
  return doc;
}

GanttChart gantt_from_result(const nlohmann::json& result) {
  try {
    GanttChart chart;
    chart.due_date = result.at("instance").at("due_date").get<Time>();
    const auto& machines = result.at("machines");
    if (!machines.is_array()) throw ResultFormatError("'machines' must be an array");
    std::size_t jobs = 0;
    for (const auto& machine : machines) {
      auto& row = chart.machines.emplace_back();
      for (const auto& job : machine.at("jobs")) {
        GanttSpan span{job.at("id").get<JobId>(), job.at("start").get<Time>(),
                       job.at("completion").get<Time>()};
        if (span.end <= span.start) throw ResultFormatError("job span must have positive length");
        row.push_back(span);
        ++jobs;
      }
    }
    if (jobs == 0) throw ResultFormatError("result contains an empty schedule");
    return chart;
  } catch (const nlohmann::json::exception& e) {
    throw ResultFormatError(std::string("malformed result: ") + e.what());
  }
}

}  // namespace cdd::cli
