#pragma once

// Exact definitions for finite O-sequences and the brute-force oracles used
// to validate the layered engine.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "oseq/bigcount.hpp"

namespace oseq {

/// Raised when an exponential-time oracle is asked for an input beyond its cap.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// binom(n, m) with binom(n,m)=0 for n<m or m<0 and binom(n,0)=1.
/// Saturates at UINT64_MAX instead of wrapping.
std::uint64_t binomial(std::int64_t n, std::int64_t m);

struct BinomialTerm {
  std::uint64_t top;     // k(i)
  std::uint32_t bottom;  // i
  bool operator==(const BinomialTerm&) const = default;
};

/// a = binom(k(t),t) + binom(k(t-1),t-1) + ... + binom(k(j),j),
/// k(t) > k(t-1) > ... > k(j) >= j >= 1.
struct BinomialExpansion {
  std::uint32_t base = 0;
  std::vector<BinomialTerm> terms;

  std::uint64_t value() const;
};

BinomialExpansion binomial_expansion(std::int64_t a, std::int64_t t);

/// a^<t>: the largest admissible h_{t+1} after h_t = a.
std::uint64_t macaulay_bound(std::int64_t a, std::int64_t t);

class OSequence {
 public:
  /// Throws std::invalid_argument if `values` is not an O-sequence.
  explicit OSequence(std::vector<std::uint64_t> values);

  std::span<const std::uint64_t> values() const { return values_; }
  std::uint64_t multiplicity() const { return multiplicity_; }
  std::size_t socle_degree() const { return values_.size() - 1; }
  std::uint64_t operator[](std::size_t i) const { return values_[i]; }
  std::uint64_t last() const { return values_.back(); }

  bool operator==(const OSequence&) const = default;

 private:
  std::vector<std::uint64_t> values_;
  std::uint64_t multiplicity_ = 0;
};

/// Accepts any integer list; malformed input yields false.
bool is_o_sequence(std::span<const std::int64_t> values);

inline constexpr int kDefaultEnumerationCap = 20;

/// Every O-sequence of multiplicity d, lexicographic order.
/// Throws BudgetError when d > cap, std::invalid_argument when d < 1.
std::vector<OSequence> enumerate_o_sequences(int d, int cap = kDefaultEnumerationCap);

/// O(p,n,k,d) by filtering the enumeration of multiplicity d.
BigCount count_opnkd_oracle(int p, int n, int k, int d, int cap = kDefaultEnumerationCap);

/// Same count against a precomputed enumeration of multiplicity d.
BigCount count_opnkd_in(int p, int n, int k, int d, std::span<const OSequence> sequences_of_d);

/// Number of integer partitions of m, p(0) = 1.
BigCount partition_number(int m);

/// p(0), ..., p(m) via the pentagonal-number recurrence.
std::vector<BigCount> partition_numbers(int m);

/// O_1, ..., O_D by a dynamic program over (degree, current value, remaining
/// multiplicity) driven directly by the Macaulay bound. Polynomial time;
/// shares nothing with the generating-function engine.
std::vector<BigCount> count_o_sequences_by_growth(int D);

}  // namespace oseq
