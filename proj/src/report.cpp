#include "recurlab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace recurlab {

double ExperimentReport::rel_err() const {
  if (!std::isfinite(prediction) || prediction == 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::fabs(measured - prediction) / std::fabs(prediction);
}

void ExperimentReport::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size()) {
    throw std::logic_error("report row has " + std::to_string(cells.size()) +
                           " cells, header has " + std::to_string(header.size()));
  }
  rows.push_back(std::move(cells));
}

void ExperimentReport::add_aggregate(std::string key, std::string value) {
  aggregate.emplace_back(std::move(key), std::move(value));
}

void ExperimentReport::add_aggregate(std::string key, double value) {
  aggregate.emplace_back(std::move(key), format_number(value));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string headline(const ExperimentReport& report) {
  return "prediction=" + format_number(report.prediction) +
         " measured=" + format_number(report.measured) +
         " rel_err=" + format_number(report.rel_err());
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(report.header);
  for (const auto& row : report.rows) line(row);
  out << "# experiment=" << report.experiment << '\n';
  for (const auto& [key, value] : report.aggregate) out << "# " << key << '=' << value << '\n';
  out << "# prediction=" << format_number(report.prediction) << '\n';
  if (!report.prediction_note.empty()) out << "# prediction_note=" << report.prediction_note << '\n';
  out << "# measured=" << format_number(report.measured) << '\n';
  out << "# rel_err=" << format_number(report.rel_err()) << '\n';
  if (!report.config_echo.empty()) out << "# config=" << report.config_echo << '\n';
}

void write_report_csv(const ExperimentReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_report_csv(report, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace recurlab
