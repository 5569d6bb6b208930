#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oseq {

/// Exact non-negative counter. All counts (O_d, A_d, O(p,n,k,d), p(m)) live here.
using BigCount = boost::multiprecision::cpp_int;

/// Plain decimal rendering, never scientific notation.
std::string to_decimal(const BigCount& x);

/// Parses a plain non-negative decimal integer. Throws std::invalid_argument
/// on anything else (signs, exponents, decimal points, empty input).
BigCount parse_decimal(std::string_view text);

/// Little-endian magnitude bytes; zero encodes as an empty string.
std::vector<std::uint8_t> to_le_bytes(const BigCount& x);
BigCount from_le_bytes(const std::uint8_t* data, std::size_t size);

/// Natural logarithm of x >= 1, valid far beyond double range.
/// Throws std::domain_error for x == 0.
double log_of_bigcount(const BigCount& x);

}  // namespace oseq
