#include "oseq/bigcount.hpp"

#include <cmath>
#include <iterator>
#include <stdexcept>

namespace oseq {

std::string to_decimal(const BigCount& x) { return x.str(); }

BigCount parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  BigCount value = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("not a non-negative decimal integer: '" + std::string(text) + "'");
    value *= 10;
    value += static_cast<unsigned>(c - '0');
  }
  return value;
}

std::vector<std::uint8_t> to_le_bytes(const BigCount& x) {
  std::vector<std::uint8_t> out;
  if (x.is_zero()) return out;
  boost::multiprecision::export_bits(x, std::back_inserter(out), 8, /*msv_first=*/false);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigCount from_le_bytes(const std::uint8_t* data, std::size_t size) {
  BigCount x = 0;
  if (size == 0) return x;
  boost::multiprecision::import_bits(x, data, data + size, 8, /*msv_first=*/false);
  return x;
}

double log_of_bigcount(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log_of_bigcount: argument must be >= 1");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64) return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
  // Keep the top 64 bits as mantissa; the dropped tail changes the value by < 2^-63 relative.
  const std::size_t shift = bits - 64;
  const BigCount top = x >> shift;
  const double mantissa = static_cast<double>(top.convert_to<std::uint64_t>());
  return std::log(mantissa) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace oseq
