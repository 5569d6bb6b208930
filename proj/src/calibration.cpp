#include "oseq/calibration.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oseq {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      compensation_ += (sum_ - t) + x;
    else
      compensation_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void require_range(const Series& s, int lo, int hi, const char* what) {
  if (!s.contains(lo) || !s.contains(hi))
    throw std::invalid_argument(std::string(what) + ": data does not cover [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
}

}  // namespace

double Series::at(int d) const {
  if (!contains(d)) throw std::out_of_range("Series: no value at d=" + std::to_string(d));
  return values[static_cast<std::size_t>(d - first_d)];
}

Series Series::tabulate(int first_d, int last_d, const std::function<double(int)>& f) {
  Series s;
  s.first_d = first_d;
  for (int d = first_d; d <= last_d; ++d) s.values.push_back(f(d));
  return s;
}

Series log_counts(const CountTable& table) {
  return Series::tabulate(1, table.D, [&](int d) { return log_of_bigcount(table.o(d)); });
}

double up_bound(int d) {
  if (d < 1) throw std::invalid_argument("up(d) needs d >= 1");
  const double x = static_cast<double>(d);
  return std::sqrt(2.0 * x) * (std::log(x) + std::numbers::pi / std::sqrt(3.0)) - std::log(24.0 * x) / 2.0;
}

double low_bound(int d) {
  if (d < 2) throw std::invalid_argument("low(d) is not defined for d < 2");
  const double m = static_cast<double>(d - 1);
  return std::numbers::pi * std::sqrt(2.0 * m / 3.0) - std::log(4.0 * m * std::sqrt(3.0));
}

FitLine least_squares(const Series& f, int d_lo, int d_hi) {
  if (d_hi <= d_lo) throw std::invalid_argument("least_squares: need at least two distinct d");
  require_range(f, d_lo, d_hi, "least_squares");
  CompensatedSum sum_d, sum_f;
  for (int d = d_lo; d <= d_hi; ++d) {
    const double v = f.at(d);
    if (!std::isfinite(v)) throw std::invalid_argument("least_squares: non-finite value at d=" + std::to_string(d));
    sum_d.add(d);
    sum_f.add(v);
  }
  const double count = static_cast<double>(d_hi - d_lo + 1);
  const double mean_d = sum_d.value() / count;
  const double mean_f = sum_f.value() / count;
  CompensatedSum sxy, sxx;
  for (int d = d_lo; d <= d_hi; ++d) {
    const double dx = d - mean_d;
    sxy.add(dx * (f.at(d) - mean_f));
    sxx.add(dx * dx);
  }
  FitLine line;
  line.beta1 = sxy.value() / sxx.value();
  line.beta0 = mean_f - line.beta1 * mean_d;
  line.d_lo = d_lo;
  line.d_hi = d_hi;
  return line;
}

std::string_view to_string(BoundKind kind) { return kind == BoundKind::upper ? "upper" : "lower"; }
std::string_view to_string(ShiftRange range) { return range == ShiftRange::from_8 ? "from_8" : "from_2"; }

double CalibrationReport::bound(int d) const { return kind == BoundKind::upper ? up_bound(d) : low_bound(d); }

double CalibrationReport::rescaled(int d) const {
  return (bound(d) - fit_bound.beta0) * slope_ratio + fit_target.beta0;
}

double CalibrationReport::calibrated(int d) const {
  return kind == BoundKind::upper ? rescaled(d) + shift : rescaled(d) - shift;
}

const StatRow& CalibrationReport::stat(std::string_view name) const {
  for (const auto& row : stats)
    if (row.name == name) return row;
  throw std::out_of_range("no statistic named " + std::string(name));
}

namespace {

struct Extremes {
  StatRow min{"", std::numeric_limits<double>::infinity(), 0};
  StatRow max{"", -std::numeric_limits<double>::infinity(), 0};
  StatRow max_abs{"", -1.0, 0};

  void add(int d, double v) {
    if (v < min.value) min = {"", v, d};
    if (v > max.value) max = {"", v, d};
    if (std::fabs(v) > max_abs.value) max_abs = {"", std::fabs(v), d};
  }
};

CalibrationReport fit_and_rescale(BoundKind kind, const Series& log_o, int fit_lo, int D) {
  require_range(log_o, fit_lo, D, "calibrate");
  CalibrationReport r;
  r.kind = kind;
  r.D = D;
  r.fit_target = least_squares(log_o, fit_lo, D);
  const Series bound = Series::tabulate(fit_lo, D, [&](int d) { return r.bound(d); });
  r.fit_bound = least_squares(bound, fit_lo, D);
  r.slope_ratio = r.fit_target.beta1 / r.fit_bound.beta1;
  r.intercept = r.fit_target.beta0 - r.fit_bound.beta0 * r.slope_ratio;
  return r;
}

}  // namespace

CalibrationReport calibrate_upper(const Series& log_o, int D) {
  if (D < 2) throw std::invalid_argument("calibrate_upper: D must be >= 2");
  CalibrationReport r = fit_and_rescale(BoundKind::upper, log_o, 1, D);
  r.shift_lo = 1;
  r.shift_hi = D;
  double shift = -std::numeric_limits<double>::infinity();
  for (int d = 1; d <= D; ++d) shift = std::max(shift, log_o.at(d) - r.rescaled(d));
  r.shift = shift;
  r.offset = r.intercept + r.shift;

  r.stats_lo = 1;
  r.stats_hi = D;
  Extremes raw, hat, hathat;
  for (int d = 1; d <= D; ++d) {
    const double y = log_o.at(d);
    raw.add(d, up_bound(d) - y);
    hat.add(d, r.rescaled(d) - y);
    hathat.add(d, r.calibrated(d) - y);
  }
  r.stats = {
      {"min(up-logO)", raw.min.value, raw.min.arg},
      {"min(up_hat-logO)", hat.min.value, hat.min.arg},
      {"min(up_hathat-logO)", hathat.min.value, hathat.min.arg},
      {"max|up-logO|", raw.max_abs.value, raw.max_abs.arg},
      {"max|up_hat-logO|", hat.max_abs.value, hat.max_abs.arg},
      {"max(up_hathat-logO)", hathat.max.value, hathat.max.arg},
  };
  return r;
}

CalibrationReport calibrate_lower(const Series& log_o, int D, ShiftRange range) {
  if (D < 9) throw std::invalid_argument("calibrate_lower: D must be >= 9");
  CalibrationReport r = fit_and_rescale(BoundKind::lower, log_o, 2, D);
  r.shift_lo = range == ShiftRange::from_8 ? 8 : 2;
  r.shift_hi = D;
  double shift = -std::numeric_limits<double>::infinity();
  for (int d = r.shift_lo; d <= D; ++d) shift = std::max(shift, r.rescaled(d) - log_o.at(d));
  r.shift = shift;
  r.offset = r.intercept - r.shift;

  r.stats_lo = 9;
  r.stats_hi = D;
  Extremes raw, hat, hathat;
  for (int d = r.stats_lo; d <= D; ++d) {
    const double y = log_o.at(d);
    raw.add(d, y - low_bound(d));
    hat.add(d, y - r.rescaled(d));
    hathat.add(d, y - r.calibrated(d));
  }
  r.stats = {
      {"min(logO-low)", raw.min.value, raw.min.arg},
      {"min(logO-low_hat)", hat.min.value, hat.min.arg},
      {"min(logO-low_hathat)", hathat.min.value, hathat.min.arg},
      {"max|logO-low|", raw.max_abs.value, raw.max_abs.arg},
      {"max|logO-low_hat|", hat.max_abs.value, hat.max_abs.arg},
      {"max(logO-low_hathat)", hathat.max.value, hathat.max.arg},
  };
  return r;
}

Series predict(const CalibrationReport& report, int d_from, int d_to) {
  if (d_to < d_from) throw std::invalid_argument("predict: empty range");
  if (d_from < report.domain_start())
    throw std::invalid_argument("predict: d=" + std::to_string(d_from) + " is below the " +
                                std::string(to_string(report.kind)) + " bound's domain");
  return Series::tabulate(d_from, d_to, [&](int d) { return report.calibrated(d); });
}

StatRow max_excess_over_data(const CalibrationReport& report, const Series& log_o, int d_lo, int d_hi) {
  require_range(log_o, d_lo, d_hi, "max_excess_over_data");
  d_lo = std::max(d_lo, report.domain_start());
  StatRow best{"max(calibrated-logO)", -std::numeric_limits<double>::infinity(), 0};
  for (int d = d_lo; d <= d_hi; ++d) {
    const double v = report.calibrated(d) - log_o.at(d);
    if (v > best.value) best = {best.name, v, d};
  }
  return best;
}

PredictionZone prediction_zone(const CalibrationReport& upper, const CalibrationReport& lower, int d_lo, int d_hi) {
  if (upper.kind != BoundKind::upper || lower.kind != BoundKind::lower)
    throw std::invalid_argument("prediction_zone: expects an upper and a lower report");
  if (upper.D != lower.D) throw std::invalid_argument("prediction_zone: reports use different horizons");
  if (d_lo < 2 || d_hi < d_lo) throw std::invalid_argument("prediction_zone: range must satisfy 2 <= d_lo <= d_hi");
  PredictionZone zone;
  zone.d_lo = d_lo;
  zone.d_hi = d_hi;
  zone.max_width = -std::numeric_limits<double>::infinity();
  for (int d = d_lo; d <= d_hi; ++d) {
    const double up = upper.calibrated(d);
    const double lo = lower.calibrated(d);
    zone.upper.push_back(up);
    zone.lower.push_back(lo);
    if (up < lo) zone.inverted.push_back(d);
    if (up - lo > zone.max_width) {
      zone.max_width = up - lo;
      zone.argmax = d;
    }
  }
  return zone;
}

}  // namespace oseq
