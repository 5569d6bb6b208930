#pragma once

#include <span>
#include <vector>

#include "oseq/bigcount.hpp"

namespace oseq {

/// Dense polynomial with exact coefficients for degrees 0..degree_cap.
class TruncPoly {
 public:
  TruncPoly() = default;
  explicit TruncPoly(int degree_cap);

  static TruncPoly monomial(int degree, int degree_cap, BigCount coefficient = 1);

  int degree_cap() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BigCount& operator[](int degree) const { return coeffs_[static_cast<std::size_t>(degree)]; }
  BigCount& operator[](int degree) { return coeffs_[static_cast<std::size_t>(degree)]; }
  std::span<const BigCount> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool operator==(const TruncPoly&) const = default;

 private:
  std::vector<BigCount> coeffs_;
};

/// Classical truncated convolution: result[m] = sum_{i+j=m} a[i] * b[j] for
/// m <= D, skipping zero coefficients of both operands. Throws
/// std::invalid_argument if either cap differs from D.
TruncPoly poly_mul_trunc(const TruncPoly& a, const TruncPoly& b, int D);

}  // namespace oseq
