#include "oseq/trunc_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace oseq {

TruncPoly::TruncPoly(int degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("TruncPoly: negative degree cap");
  coeffs_.assign(static_cast<std::size_t>(degree_cap) + 1, BigCount(0));
}

TruncPoly TruncPoly::monomial(int degree, int degree_cap, BigCount coefficient) {
  TruncPoly out(degree_cap);
  if (degree >= 0 && degree <= degree_cap) out[degree] = std::move(coefficient);
  return out;
}

bool TruncPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigCount& c) { return c.is_zero(); });
}

TruncPoly poly_mul_trunc(const TruncPoly& a, const TruncPoly& b, int D) {
  if (a.degree_cap() != D || b.degree_cap() != D)
    throw std::invalid_argument("poly_mul_trunc: degree caps " + std::to_string(a.degree_cap()) + " and " +
                                std::to_string(b.degree_cap()) + " do not match D=" + std::to_string(D));
  TruncPoly out(D);
  for (int i = 0; i <= D; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= D; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace oseq
