#pragma once

// Empirical calibration of the explicit asymptotic bound expressions
// against log(O_d): least-squares lines, affine rescaling onto the data's
// fitted line, a one-sided shift restoring coverage, and extrapolation.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "oseq/engine.hpp"

namespace oseq {

/// Real values indexed by consecutive integers d = first_d, first_d+1, ...
struct Series {
  int first_d = 1;
  std::vector<double> values;

  int last_d() const { return first_d + static_cast<int>(values.size()) - 1; }
  bool contains(int d) const { return d >= first_d && d <= last_d(); }
  /// Throws std::out_of_range outside the stored range.
  double at(int d) const;

  static Series tabulate(int first_d, int last_d, const std::function<double(int)>& f);
};

/// log(O_d) for d = 1..D.
Series log_counts(const CountTable& table);

/// up(d) = sqrt(2d) (log d + pi/sqrt 3) - log(24 d)/2, d >= 1.
double up_bound(int d);
/// low(d) = pi sqrt(2(d-1)/3) - log(4 (d-1) sqrt 3), d >= 2.
double low_bound(int d);

/// L(d) = beta0 + beta1 d fitted on [d_lo, d_hi].
struct FitLine {
  double beta0 = 0.0;
  double beta1 = 0.0;
  int d_lo = 0;
  int d_hi = 0;

  double operator()(double d) const { return beta0 + beta1 * d; }
};

/// Ordinary least squares over the integers d_lo..d_hi using compensated sums.
/// Throws std::invalid_argument for fewer than two points, missing data or
/// non-finite values.
FitLine least_squares(const Series& f, int d_lo, int d_hi);

enum class BoundKind { upper, lower };
std::string_view to_string(BoundKind kind);

/// Where the lower-bound shift is maximised: 8 <= d <= D, or 2 <= d <= D.
enum class ShiftRange { from_8, from_2 };
std::string_view to_string(ShiftRange range);

struct StatRow {
  std::string name;
  double value = 0.0;
  int arg = 0;  // d attaining the extremum
};

struct CalibrationReport {
  BoundKind kind = BoundKind::upper;
  int D = 0;
  FitLine fit_target;  // log(O_d)
  FitLine fit_bound;   // up(d) or low(d)
  double slope_ratio = 0.0;  // F(D) = beta1(log O) / beta1(bound)
  double intercept = 0.0;    // beta0(log O) - beta0(bound) F(D)
  double shift = 0.0;        // max(log O - up_hat) or max(low_hat - log O)
  double offset = 0.0;       // G(D): intercept + shift (upper) or intercept - shift (lower)
  int shift_lo = 0;
  int shift_hi = 0;
  int stats_lo = 0;
  int stats_hi = 0;
  std::vector<StatRow> stats;

  double bound(int d) const;
  /// Affine rescaling onto the data's fitted line (no shift).
  double rescaled(int d) const;
  /// F(D) bound(d) + G(D).
  double calibrated(int d) const;
  int domain_start() const { return kind == BoundKind::upper ? 1 : 2; }

  /// Throws std::out_of_range for an unknown row.
  const StatRow& stat(std::string_view name) const;
};

/// Fits on [1, D]; shift and statistics over [1, D].
CalibrationReport calibrate_upper(const Series& log_o, int D);

/// Fits on [2, D]; shift over the chosen range; statistics over 8 < d <= D.
CalibrationReport calibrate_lower(const Series& log_o, int D, ShiftRange range = ShiftRange::from_8);

/// Calibrated curve on [d_from, d_to]; may extend past report.D.
/// Throws std::invalid_argument below the bound's domain or for an empty range.
Series predict(const CalibrationReport& report, int d_from, int d_to);

/// max over [d_lo, d_hi] of (calibrated(d) - log O_d), with its argmax.
StatRow max_excess_over_data(const CalibrationReport& report, const Series& log_o, int d_lo, int d_hi);

struct PredictionZone {
  int d_lo = 0;
  int d_hi = 0;
  std::vector<double> lower;  // index d - d_lo
  std::vector<double> upper;
  double max_width = 0.0;
  int argmax = 0;
  std::vector<int> inverted;  // d with upper < lower
};

/// Band [lower.calibrated(d), upper.calibrated(d)] on [d_lo, d_hi].
PredictionZone prediction_zone(const CalibrationReport& upper, const CalibrationReport& lower, int d_lo, int d_hi);

}  // namespace oseq
