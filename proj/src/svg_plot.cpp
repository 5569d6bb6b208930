#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oseq/dataset_io.hpp"

namespace oseq {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Roughly five "nice" steps (1, 2, 5 x 10^k) covering [lo, hi].
double nice_step(double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double factor = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return factor * mag;
}

}  // namespace

std::string render_svg(const std::vector<PlotLine>& lines, const PlotOptions& options) {
  if (lines.empty()) throw std::invalid_argument("render_svg: nothing to plot");
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& line : lines) {
    if (line.series.values.empty()) throw std::invalid_argument("render_svg: series '" + line.label + "' is empty");
    x_lo = std::min(x_lo, static_cast<double>(line.series.first_d));
    x_hi = std::max(x_hi, static_cast<double>(line.series.last_d()));
    for (double v : line.series.values) {
      if (!std::isfinite(v)) continue;
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (!(y_hi > y_lo)) {
    const double pad = std::isfinite(y_lo) && y_lo != 0 ? std::fabs(y_lo) * 0.1 : 1.0;
    y_lo = (std::isfinite(y_lo) ? y_lo : 0.0) - pad;
    y_hi = y_lo + 2 * pad;
  }

  const double W = options.width, H = options.height;
  const double left = 70, right = 20, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
     << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty())
    os << "<text x=\"" << num(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
       << escape(options.title) << "</text>\n";

  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw) << "\" y2=\""
     << num(top + ph) << "\"/>\n";
  os << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\"" << num(top + ph)
     << "\"/>\n";
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const double xs = nice_step(x_lo, x_hi);
  for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9; x += xs)
    os << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(top + ph + 16) << "\" text-anchor=\"middle\">"
       << tick_label(x) << "</text>\n";
  const double ys = nice_step(y_lo, y_hi);
  for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9 * std::fabs(y_hi); y += ys)
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << tick_label(y)
       << "</text>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 20) << "\" text-anchor=\"middle\">"
     << escape(options.x_label) << "</text>\n";
  if (!options.y_label.empty())
    os << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << num(top + ph / 2) << ")\">" << escape(options.y_label) << "</text>\n";
  os << "</g>\n";

  for (const auto& line : lines) {
    os << "<polyline fill=\"none\" stroke=\"" << escape(line.color) << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (int d = line.series.first_d; d <= line.series.last_d(); ++d) {
      const double v = line.series.at(d);
      if (!std::isfinite(v)) continue;
      os << (first ? "" : " ") << num(sx(d)) << ',' << num(sy(v));
      first = false;
    }
    os << "\"/>\n";
  }

  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const double y = top + 12 + 16 * static_cast<double>(i);
    os << "<line x1=\"" << num(left + 10) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + 30) << "\" y2=\""
       << num(y) << "\" stroke=\"" << escape(lines[i].color) << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(left + 36) << "\" y=\"" << num(y + 4) << "\">" << escape(lines[i].label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_svg(const std::filesystem::path& path, const std::vector<PlotLine>& lines, const PlotOptions& options) {
  const std::string text = render_svg(lines, options);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw DatasetError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw DatasetError("write failed for " + path.string());
}

}  // namespace oseq
