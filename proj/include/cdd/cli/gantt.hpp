#pragma once

#include <string>
#include <vector>

#include "cdd/core.hpp"

namespace cdd::cli {

struct GanttSpan {
  JobId job = 0;
  Time start = 0;
  Time end = 0;  // completion time, exclusive end of [start, end)
};

struct GanttChart {
  Time due_date = 0;
  std::vector<std::vector<GanttSpan>> machines;
};

GanttChart gantt_from_schedule(const Instance& instance, const Schedule& schedule);

// One line per machine: "M1  J1[5,11) J2[11,16) |D=16| J3[16,18) ...", the
// due-date marker placed before the first job that ends after D.
std::string render_gantt_text(const GanttChart& chart);

// One row per machine with a vertical due-date line.
std::string render_gantt_svg(const GanttChart& chart);

}  // namespace cdd::cli
