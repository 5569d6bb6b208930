#include "oseq/properties.hpp"

#include <algorithm>
#include <cmath>

#include "oseq/combinatorics.hpp"

namespace oseq {

void PropertyVerdict::fail(long index, std::string tag) {
  holds = false;
  witnesses.push_back({index, std::move(tag)});
}

PropertyVerdict is_sub_fibonacci(std::span<const BigCount> x) {
  PropertyVerdict v{"sub-fibonacci", true, {}, 1, static_cast<long>(x.size())};
  if (x.size() < 3) {
    v.fail(static_cast<long>(x.size()), "fewer than three terms");
    return v;
  }
  if (x[0] != 1) v.fail(1, "x_1 != 1");
  if (x[1] != 1) v.fail(2, "x_2 != 1");
  for (std::size_t k = 3; k <= x.size(); ++k) {
    const BigCount& cur = x[k - 1];
    if (cur < x[k - 2]) v.fail(static_cast<long>(k), "decreasing");
    if (cur > x[k - 2] + x[k - 3]) v.fail(static_cast<long>(k), "x_k > x_{k-1} + x_{k-2}");
  }
  return v;
}

PropertyVerdict check_A_subfibonacci(std::span<const BigCount> a) {
  PropertyVerdict v{"A-subfibonacci", true, {}, 3, static_cast<long>(a.size())};
  for (std::size_t d = 3; d + 1 <= a.size(); ++d)
    if (a[d - 1] > a[d]) v.fail(static_cast<long>(d), "A_d > A_{d+1}");
  if (a.size() < 3) {
    v.fail(static_cast<long>(a.size()), "fewer than three terms");
    return v;
  }
  // x_n = A_{n+2}; report witnesses in d = n + 2 coordinates.
  const auto shifted = is_sub_fibonacci(a.subspan(2));
  for (const auto& w : shifted.witnesses) v.fail(w.index + 2, "shifted: " + w.tag);
  std::sort(v.witnesses.begin(), v.witnesses.end(), [](const Witness& l, const Witness& r) { return l.index < r.index; });
  return v;
}

PropertyVerdict check_ratio_decreasing(std::span<const BigCount> o, int start) {
  PropertyVerdict v{"ratio-decreasing", true, {}, start, static_cast<long>(o.size())};
  // O_d/O_{d-1} < O_{d-1}/O_{d-2} at each d whose predecessor ratio exists in range.
  for (long d = std::max<long>(start + 1, 3); d <= static_cast<long>(o.size()); ++d) {
    const BigCount lhs = o[static_cast<std::size_t>(d - 1)] * o[static_cast<std::size_t>(d - 3)];
    const BigCount rhs = o[static_cast<std::size_t>(d - 2)] * o[static_cast<std::size_t>(d - 2)];
    if (lhs == rhs)
      v.fail(d, "tie");
    else if (lhs > rhs)
      v.fail(d, "increase");
  }
  return v;
}

PropertyVerdict check_difference_identity(std::span<const BigCount> o, std::span<const BigCount> a) {
  PropertyVerdict v{"difference-identity", true, {}, 1, static_cast<long>(o.size())};
  if (o.size() != a.size()) {
    v.fail(0, "length mismatch");
    return v;
  }
  if (!a.empty() && a[0] != 0) v.fail(1, "A_1 != 0");
  if (a.size() >= 2 && a[1] != 0) v.fail(2, "A_2 != 0");
  if (!o.empty() && o[0] != 1) v.fail(1, "O_1 != 1");
  if (o.size() >= 2 && o[1] != 1) v.fail(2, "O_2 != 1");
  for (std::size_t d = 3; d <= o.size(); ++d)
    if (o[d - 1] != o[d - 2] + a[d - 1]) v.fail(static_cast<long>(d), "O_d != O_{d-1} + A_d");
  return v;
}

namespace {

double raw_upper_log(int d, const BigCount& partitions_d) {
  const double x = static_cast<double>(d);
  return 0.5 * std::log(2.0 * x) + log_of_bigcount(partitions_d) + std::sqrt(2.0 * x) * std::log(x);
}

}  // namespace

PropertyVerdict check_sz_sandwich(std::span<const BigCount> o, double tolerance) {
  PropertyVerdict v{"partition-sandwich", true, {}, 3, static_cast<long>(o.size())};
  if (o.size() < 3) return v;
  const auto partitions = partition_numbers(static_cast<int>(o.size()));
  for (std::size_t d = 3; d <= o.size(); ++d) {
    const BigCount& od = o[d - 1];
    if (partitions[d - 1] > od) v.fail(static_cast<long>(d), "p(d-1) > O_d");
    if (od.is_zero()) continue;
    if (log_of_bigcount(od) > raw_upper_log(static_cast<int>(d), partitions[d]) + tolerance)
      v.fail(static_cast<long>(d), "O_d above upper bound");
  }
  return v;
}

RobertsDiagnostic roberts_diagnostic(std::span<const BigCount> o) {
  RobertsDiagnostic out;
  const int D = static_cast<int>(o.size());
  out.ratio = Series::tabulate(1, D, [&](int d) { return log_of_bigcount(o[static_cast<std::size_t>(d - 1)]) / d; });
  if (D >= 3) {
    const auto partitions = partition_numbers(D);
    out.envelope = Series::tabulate(3, D, [&](int d) {
      return raw_upper_log(d, partitions[static_cast<std::size_t>(d)]) / d;
    });
  }
  if (D >= 8) {
    const int lo = D - D / 4 + 1;
    out.trailing_fit = least_squares(out.ratio, lo, D);
    out.trailing_sign = (out.trailing_fit.beta1 > 0) - (out.trailing_fit.beta1 < 0);
  }
  return out;
}

}  // namespace oseq
