#include "cdd/cli/gantt.hpp"

#include <algorithm>
#include <sstream>

namespace cdd::cli {

namespace {

constexpr int kUnit = 16;      // px per time unit
constexpr int kRow = 28;       // px per machine row
constexpr int kLeft = 48;      // label gutter
constexpr int kTop = 24;

}  // namespace

GanttChart gantt_from_schedule(const Instance& instance, const Schedule& schedule) {
  GanttChart chart;
  chart.due_date = instance.due_date();
  for (const auto& machine : schedule.machines) {
    auto& row = chart.machines.emplace_back();
    for (const ScheduledJob& sj : machine) {
      row.push_back({sj.job, sj.completion - instance.job(sj.job).processing_time, sj.completion});
    }
  }
  return chart;
}

std::string render_gantt_text(const GanttChart& chart) {
  std::ostringstream out;
  out << "due date " << chart.due_date << '\n';
  for (std::size_t m = 0; m < chart.machines.size(); ++m) {
    out << 'M' << m + 1 << ' ';
    bool marked = false;
    for (const GanttSpan& span : chart.machines[m]) {
      if (!marked && span.end > chart.due_date) {
        out << " |D=" << chart.due_date << '|';
        marked = true;
      }
      out << " J" << span.job << '[' << span.start << ',' << span.end << ')';
    }
    if (!marked) out << " |D=" << chart.due_date << '|';
    out << '\n';
  }
  return out.str();
}

std::string render_gantt_svg(const GanttChart& chart) {
  Time horizon = chart.due_date;
  for (const auto& row : chart.machines) {
    for (const GanttSpan& span : row) horizon = std::max(horizon, span.end);
  }
  const long width = kLeft + (horizon + 2) * kUnit;
  const long height = kTop + static_cast<long>(chart.machines.size()) * kRow + kTop;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"11\">\n";
  for (std::size_t m = 0; m < chart.machines.size(); ++m) {
    const long y = kTop + static_cast<long>(m) * kRow;
    svg << "  <text x=\"4\" y=\"" << y + kRow / 2 + 4 << "\">M" << m + 1 << "</text>\n";
    for (const GanttSpan& span : chart.machines[m]) {
      const long x = kLeft + span.start * kUnit;
      const long w = (span.end - span.start) * kUnit;
      svg << "  <rect x=\"" << x << "\" y=\"" << y + 2 << "\" width=\"" << w << "\" height=\""
          << kRow - 4 << "\" fill=\"#d9d9d9\" stroke=\"#333\"/>\n";
      svg << "  <text x=\"" << x + w / 2 << "\" y=\"" << y + kRow / 2 + 4
          << "\" text-anchor=\"middle\">J" << span.job << "</text>\n";
    }
  }
  const long due_x = kLeft + chart.due_date * kUnit;
  svg << "  <line x1=\"" << due_x << "\" y1=\"" << kTop / 2 << "\" x2=\"" << due_x << "\" y2=\""
      << height - kTop / 2 << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
  svg << "  <text x=\"" << due_x + 3 << "\" y=\"" << kTop / 2 + 2 << "\" fill=\"#c00\">D="
      << chart.due_date << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace cdd::cli
