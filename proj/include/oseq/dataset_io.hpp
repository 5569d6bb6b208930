#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "oseq/calibration.hpp"
#include "oseq/engine.hpp"
#include "oseq/properties.hpp"

namespace oseq {

/// Malformed or inconsistent data file; `line()` is 1-based, 0 when not tied to a line.
class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Writes `d,O_d,A_d` (or `d,O_d`) with plain decimal integers.
void write_counts_csv(const CountTable& table, const std::filesystem::path& path, bool with_a = true);

/// Parses `d,O_d[,A_d]` rows; an optional header line starting with "d" is skipped.
/// Rejects non-decimal values, duplicate d, and gaps (d must run 1, 2, ...).
std::map<int, BigCount> ingest_reference(const std::filesystem::path& path);

/// Ingested O values as a CountTable (A recomputed as differences).
CountTable read_counts_csv(const std::filesystem::path& path);

/// Two-column `d,value` text file; values printed with 17 significant digits.
/// Throws std::invalid_argument for an empty series, DatasetError if unwritable.
void emit_plot_series(const std::filesystem::path& path, const Series& series);
Series read_plot_series(const std::filesystem::path& path);

/// `key,value` rows for every number in the report.
void write_calibration_report(const CalibrationReport& report, const std::filesystem::path& path);

/// One line per verdict plus witnesses.
std::string format_verdict(const PropertyVerdict& verdict, std::size_t max_witnesses = 10);

struct PlotLine {
  std::string label;
  std::string color;  // any SVG color
  Series series;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "d";
  std::string y_label;
  int width = 800;
  int height = 500;
};

/// Minimal line chart: axes with ticks, one polyline per series, legend.
/// Byte-identical output for identical input.
std::string render_svg(const std::vector<PlotLine>& lines, const PlotOptions& options);
void write_svg(const std::filesystem::path& path, const std::vector<PlotLine>& lines, const PlotOptions& options);

}  // namespace oseq
