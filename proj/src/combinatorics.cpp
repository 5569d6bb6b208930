#include "oseq/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace oseq {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

void require_positive(std::int64_t value, const char* what) {
  if (value <= 0) throw std::invalid_argument(std::string(what) + " must be a positive integer");
}

}  // namespace

std::uint64_t binomial(std::int64_t n, std::int64_t m) {
  if (m < 0 || n < 0 || n < m) return 0;
  m = std::min(m, n - m);
  unsigned __int128 result = 1;
  for (std::int64_t i = 1; i <= m; ++i) {
    result = result * static_cast<unsigned __int128>(n - m + i) / static_cast<unsigned __int128>(i);
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t BinomialExpansion::value() const {
  std::uint64_t sum = 0;
  for (const auto& term : terms) sum = saturating_add(sum, binomial(static_cast<std::int64_t>(term.top), term.bottom));
  return sum;
}

BinomialExpansion binomial_expansion(std::int64_t a, std::int64_t t) {
  require_positive(a, "binomial_expansion: a");
  require_positive(t, "binomial_expansion: t");
  BinomialExpansion out;
  out.base = static_cast<std::uint32_t>(t);
  auto remaining = static_cast<std::uint64_t>(a);
  for (std::int64_t i = t; i >= 1 && remaining > 0; --i) {
    // Largest k with binom(k, i) <= remaining; binom(i, i) = 1 always fits.
    std::int64_t lo = i;
    std::int64_t hi = i + 1;
    while (binomial(hi, i) <= remaining) {
      lo = hi;
      hi = i + 2 * (hi - i);
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (binomial(mid, i) <= remaining)
        lo = mid;
      else
        hi = mid;
    }
    out.terms.push_back({static_cast<std::uint64_t>(lo), static_cast<std::uint32_t>(i)});
    remaining -= binomial(lo, i);
  }
  return out;
}

std::uint64_t macaulay_bound(std::int64_t a, std::int64_t t) {
  require_positive(a, "macaulay_bound: a");
  require_positive(t, "macaulay_bound: t");
  // Every term is binom(i,i) when a <= t, so the bound is a itself.
  if (a <= t) return static_cast<std::uint64_t>(a);
  std::uint64_t bound = 0;
  for (const auto& term : binomial_expansion(a, t).terms)
    bound = saturating_add(bound, binomial(static_cast<std::int64_t>(term.top) + 1, term.bottom + 1));
  return bound;
}

bool is_o_sequence(std::span<const std::int64_t> values) {
  if (values.empty() || values[0] != 1) return false;
  for (auto v : values)
    if (v < 1) return false;
  // h_0 -> h_1 is free: the number of variables is not fixed.
  for (std::size_t t = 1; t + 1 < values.size(); ++t)
    if (static_cast<std::uint64_t>(values[t + 1]) > macaulay_bound(values[t], static_cast<std::int64_t>(t)))
      return false;
  return true;
}

OSequence::OSequence(std::vector<std::uint64_t> values) : values_(std::move(values)) {
  std::vector<std::int64_t> signed_values(values_.begin(), values_.end());
  if (!is_o_sequence(signed_values)) throw std::invalid_argument("not an O-sequence");
  for (auto v : values_) multiplicity_ += v;
}

namespace {

void extend(std::vector<std::uint64_t>& prefix, std::uint64_t remaining, std::vector<OSequence>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  const std::size_t t = prefix.size() - 1;
  const std::uint64_t cap =
      t == 0 ? remaining : std::min<std::uint64_t>(remaining, macaulay_bound(static_cast<std::int64_t>(prefix.back()),
                                                                             static_cast<std::int64_t>(t)));
  for (std::uint64_t next = 1; next <= cap; ++next) {
    prefix.push_back(next);
    extend(prefix, remaining - next, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<OSequence> enumerate_o_sequences(int d, int cap) {
  if (d < 1) throw std::invalid_argument("enumerate_o_sequences: d must be >= 1");
  if (d > cap)
    throw BudgetError("enumerate_o_sequences: d=" + std::to_string(d) + " exceeds enumeration cap " +
                      std::to_string(cap));
  std::vector<OSequence> out;
  std::vector<std::uint64_t> prefix{1};
  extend(prefix, static_cast<std::uint64_t>(d - 1), out);
  return out;
}

BigCount count_opnkd_in(int p, int n, int k, int d, std::span<const OSequence> sequences_of_d) {
  if (p < 0 || n < 0 || k < 0 || d <= 0) return 0;
  if (p == 0) return (k == 0 && d == 1) ? 1 : 0;
  std::uint64_t count = 0;
  for (const auto& h : sequences_of_d) {
    if (h.multiplicity() != static_cast<std::uint64_t>(d)) continue;
    const auto s = static_cast<int>(h.socle_degree());
    if (s > n) continue;
    bool member = true;
    // Full prefix through degree k, with h_i = 0 beyond the socle degree.
    for (int i = 0; i <= k && member; ++i) {
      const std::uint64_t hi = i <= s ? h[static_cast<std::size_t>(i)] : 0;
      member = hi == binomial(p - 1 + i, i);
    }
    for (int i = k + 1; i <= s && member; ++i) member = h[static_cast<std::size_t>(i)] < binomial(p - 1 + i, i);
    if (member) ++count;
  }
  return count;
}

BigCount count_opnkd_oracle(int p, int n, int k, int d, int cap) {
  if (p < 0 || n < 0 || k < 0 || d <= 0) return 0;
  if (p == 0) return (k == 0 && d == 1) ? 1 : 0;
  const auto sequences = enumerate_o_sequences(d, cap);
  return count_opnkd_in(p, n, k, d, sequences);
}

std::vector<BigCount> partition_numbers(int m) {
  if (m < 0) throw std::invalid_argument("partition_numbers: m must be >= 0");
  std::vector<BigCount> p(static_cast<std::size_t>(m) + 1);
  p[0] = 1;
  for (int n = 1; n <= m; ++n) {
    BigCount acc = 0;
    for (int j = 1;; ++j) {
      const int g1 = j * (3 * j - 1) / 2;
      if (g1 > n) break;
      const int g2 = j * (3 * j + 1) / 2;
      BigCount term = p[static_cast<std::size_t>(n - g1)];
      if (g2 <= n) term += p[static_cast<std::size_t>(n - g2)];
      if (j % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    p[static_cast<std::size_t>(n)] = acc;
  }
  return p;
}

BigCount partition_number(int m) { return partition_numbers(m).back(); }

std::vector<BigCount> count_o_sequences_by_growth(int D) {
  if (D < 1) throw std::invalid_argument("count_o_sequences_by_growth: D must be >= 1");
  // completions_t(h, r): ways to finish a sequence whose entry in degree t is h
  // with r units of multiplicity still to place. Row r holds h = 1..D-t-r.
  struct Table {
    int width = 0;  // D - t
    std::vector<std::size_t> row_offset;
    std::vector<BigCount> cells;
    const BigCount& at(int h, int r) const { return cells[row_offset[static_cast<std::size_t>(r)] + static_cast<std::size_t>(h - 1)]; }
  };
  auto make_table = [](int width) {
    Table tab;
    tab.width = width;
    std::size_t offset = 0;
    for (int r = 0; r < width; ++r) {
      tab.row_offset.push_back(offset);
      offset += static_cast<std::size_t>(width - r);
    }
    tab.cells.assign(offset, BigCount(0));
    return tab;
  };

  Table next;  // degree t+1
  std::vector<BigCount> prefix;
  for (int t = D - 1; t >= 1; --t) {
    Table cur = make_table(D - t);
    std::vector<std::uint64_t> bound(static_cast<std::size_t>(D - t) + 1, 0);
    for (int h = 1; h <= D - t; ++h) bound[static_cast<std::size_t>(h)] = macaulay_bound(h, t);
    for (int r = 0; r < D - t; ++r) {
      if (r > 0) {
        // prefix[m] = sum_{h'=1..m} completions_{t+1}(h', r-h')
        prefix.assign(static_cast<std::size_t>(r) + 1, BigCount(0));
        for (int m = 1; m <= r; ++m) prefix[static_cast<std::size_t>(m)] = prefix[static_cast<std::size_t>(m - 1)] + next.at(m, r - m);
      }
      for (int h = 1; h <= D - t - r; ++h) {
        BigCount& cell = cur.cells[cur.row_offset[static_cast<std::size_t>(r)] + static_cast<std::size_t>(h - 1)];
        if (r == 0) {
          cell = 1;
        } else {
          const auto m = std::min<std::uint64_t>(static_cast<std::uint64_t>(r), bound[static_cast<std::size_t>(h)]);
          cell = prefix[m];
        }
      }
    }
    next = std::move(cur);
  }

  std::vector<BigCount> counts(static_cast<std::size_t>(D), BigCount(0));
  counts[0] = 1;
  for (int d = 2; d <= D; ++d) {
    BigCount total = 0;
    for (int h1 = 1; h1 <= d - 1; ++h1) total += next.at(h1, d - 1 - h1);
    counts[static_cast<std::size_t>(d - 1)] = total;
  }
  return counts;
}

}  // namespace oseq
