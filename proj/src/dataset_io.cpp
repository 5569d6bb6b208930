#include "oseq/dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace oseq {

DatasetError::DatasetError(const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DatasetError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw DatasetError("write failed for " + path.string());
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  return s.substr(start);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_counts_csv(const CountTable& table, const std::filesystem::path& path, bool with_a) {
  auto out = open_for_writing(path);
  out << (with_a ? "d,O_d,A_d\n" : "d,O_d\n");
  for (int d = 1; d <= table.D; ++d) {
    out << d << ',' << to_decimal(table.o(d));
    if (with_a) out << ',' << to_decimal(table.a(d));
    out << '\n';
  }
  finish(out, path);
}

std::map<int, BigCount> ingest_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::map<int, BigCount> values;
  std::string line;
  std::size_t line_no = 0;
  int expected = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line_no == 1 && line[0] == 'd') continue;
    const auto fields = split_commas(line);
    if (fields.size() < 2 || fields.size() > 3) throw DatasetError("expected d,O_d[,A_d], got '" + line + "'", line_no);
    int d = 0;
    const auto& df = fields[0];
    const auto [ptr, ec] = std::from_chars(df.data(), df.data() + df.size(), d);
    if (ec != std::errc{} || ptr != df.data() + df.size() || d < 1)
      throw DatasetError("bad index '" + df + "'", line_no);
    BigCount value;
    try {
      value = parse_decimal(fields[1]);
    } catch (const std::invalid_argument&) {
      throw DatasetError("bad count '" + fields[1] + "' (plain decimal integers only)", line_no);
    }
    if (values.count(d) != 0) throw DatasetError("duplicate d=" + std::to_string(d), line_no);
    if (d != expected)
      throw DatasetError("gap: expected d=" + std::to_string(expected) + ", found d=" + std::to_string(d), line_no);
    values.emplace(d, std::move(value));
    ++expected;
  }
  if (values.empty()) throw DatasetError(path.string() + " holds no rows");
  return values;
}

CountTable read_counts_csv(const std::filesystem::path& path) {
  const auto values = ingest_reference(path);
  std::vector<BigCount> o;
  o.reserve(values.size());
  for (const auto& [d, v] : values) o.push_back(v);
  return CountTable::from_o(std::move(o));
}

void emit_plot_series(const std::filesystem::path& path, const Series& series) {
  if (series.values.empty()) throw std::invalid_argument("emit_plot_series: empty series");
  auto out = open_for_writing(path);
  out << "d,value\n";
  for (int d = series.first_d; d <= series.last_d(); ++d) out << d << ',' << format_double(series.at(d)) << '\n';
  finish(out, path);
}

Series read_plot_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  Series s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || (line_no == 1 && line[0] == 'd')) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 2) throw DatasetError("expected d,value", line_no);
    int d = 0;
    double v = 0.0;
    try {
      d = std::stoi(fields[0]);
      v = std::stod(fields[1]);
    } catch (const std::exception&) {
      throw DatasetError("unparsable row '" + line + "'", line_no);
    }
    if (s.values.empty())
      s.first_d = d;
    else if (d != s.last_d() + 1)
      throw DatasetError("non-consecutive d=" + std::to_string(d), line_no);
    s.values.push_back(v);
  }
  if (s.values.empty()) throw DatasetError(path.string() + " holds no rows");
  return s;
}

void write_calibration_report(const CalibrationReport& r, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  out << "key,value\n";
  out << "kind," << to_string(r.kind) << '\n';
  out << "D," << r.D << '\n';
  out << "fit_range," << r.fit_target.d_lo << '-' << r.fit_target.d_hi << '\n';
  out << "beta0_logO," << format_double(r.fit_target.beta0) << '\n';
  out << "beta1_logO," << format_double(r.fit_target.beta1) << '\n';
  out << "beta0_bound," << format_double(r.fit_bound.beta0) << '\n';
  out << "beta1_bound," << format_double(r.fit_bound.beta1) << '\n';
  out << "F," << format_double(r.slope_ratio) << '\n';
  out << "intercept," << format_double(r.intercept) << '\n';
  out << "shift," << format_double(r.shift) << '\n';
  out << "shift_range," << r.shift_lo << '-' << r.shift_hi << '\n';
  out << "G," << format_double(r.offset) << '\n';
  out << "stats_range," << r.stats_lo << '-' << r.stats_hi << '\n';
  for (const auto& row : r.stats) {
    out << row.name << ',' << format_double(row.value) << '\n';
    out << "arg " << row.name << ',' << row.arg << '\n';
  }
  finish(out, path);
}

std::string format_verdict(const PropertyVerdict& v, std::size_t max_witnesses) {
  std::ostringstream os;
  os << (v.holds ? "HOLDS  " : "FAILS  ") << v.name << "  [" << v.range_lo << ", " << v.range_hi << "]";
  if (!v.holds) {
    os << "  witnesses:";
    for (std::size_t i = 0; i < v.witnesses.size() && i < max_witnesses; ++i)
      os << ' ' << v.witnesses[i].index << " (" << v.witnesses[i].tag << ')';
    if (v.witnesses.size() > max_witnesses) os << " ... " << v.witnesses.size() << " total";
  }
  return os.str();
}

}  // namespace oseq
