#pragma once

#include <span>
#include <string>
#include <vector>

#include "oseq/bigcount.hpp"
#include "oseq/calibration.hpp"

namespace oseq {

struct Witness {
  long index = 0;
  std::string tag;  // short reason, e.g. "tie" or "x_k > x_{k-1} + x_{k-2}"
};

struct PropertyVerdict {
  std::string name;
  bool holds = true;
  std::vector<Witness> witnesses;  // ascending index; empty iff holds
  long range_lo = 0;
  long range_hi = 0;

  void fail(long index, std::string tag);
};

/// x[0] is x_1. Checks x_1 = x_2 = 1, non-decreasing, x_k <= x_{k-1} + x_{k-2}.
PropertyVerdict is_sub_fibonacci(std::span<const BigCount> x);

/// a[0] is A_1. Checks A_d <= A_{d+1} for d > 2 and that (A_3, A_4, ...) is sub-Fibonacci.
PropertyVerdict check_A_subfibonacci(std::span<const BigCount> a);

/// o[0] is O_1. Strict O_d O_{d-2} < O_{d-1}^2 for start <= d <= D, exact integers.
/// Ties are reported with tag "tie".
PropertyVerdict check_ratio_decreasing(std::span<const BigCount> o, int start = 12);

/// O_d = O_{d-1} + A_d for d >= 2, A_1 = A_2 = 0.
PropertyVerdict check_difference_identity(std::span<const BigCount> o, std::span<const BigCount> a);

/// p(d-1) <= O_d exactly, and log O_d <= log(2d)/2 + log p(d) + sqrt(2d) log d
/// within `tolerance`, for 3 <= d <= D.
PropertyVerdict check_sz_sandwich(std::span<const BigCount> o, double tolerance = 1e-9);

struct RobertsDiagnostic {
  Series ratio;     // log(O_d)/d
  Series envelope;  // (log(2d)/2 + log p(d) + sqrt(2d) log d)/d, from d = 3
  FitLine trailing_fit;  // least squares over the last quarter of d
  int trailing_sign = 0; // sign of trailing_fit.beta1
};

RobertsDiagnostic roberts_diagnostic(std::span<const BigCount> o);

}  // namespace oseq
