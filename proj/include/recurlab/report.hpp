#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace recurlab {

/// Output of one experiment: CSV rows with a fixed header, an aggregate block
/// written after the rows as `# key=value` comment lines, the headline
/// prediction/measured pair and the configuration that produced it.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> aggregate;
  double prediction = std::numeric_limits<double>::quiet_NaN();
  std::string prediction_note;
  double measured = std::numeric_limits<double>::quiet_NaN();
  // Single-line JSON of the configuration; empty when run without one.
  std::string config_echo;

  // |measured - prediction| / |prediction|; NaN when the prediction is NaN or 0.
  double rel_err() const;
  void add_row(std::vector<std::string> cells);
  void add_aggregate(std::string key, std::string value);
  void add_aggregate(std::string key, double value);
};

// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

// `prediction=<p> measured=<m> rel_err=<e>`
std::string headline(const ExperimentReport& report);

void write_report_csv(const ExperimentReport& report, std::ostream& out);
// Throws std::runtime_error naming the path on I/O failure.
void write_report_csv(const ExperimentReport& report, const std::filesystem::path& path);

}  // namespace recurlab
