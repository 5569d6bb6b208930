#include <map>
#include <string>
#include <tuple>

#include "oseq/combinatorics.hpp"
#include "oseq/engine.hpp"

namespace oseq {

namespace {

// 1 + sum_{l=1}^{d-2} sum_{k=1}^{d-2} sum_{i=k}^{d-2} sum_{j=j0}^{d-2}
//       O(d-l-1, d-1, i, d-j) * O(d-l, i-1, k-1, j)
BigCount closed_quadruple_sum(int d, int j0, int cap) {
  if (d < 3) throw std::invalid_argument("closed sums need d >= 3");
  if (d > cap) throw BudgetError("closed sums: d=" + std::to_string(d) + " exceeds cap " + std::to_string(cap));

  std::vector<std::vector<OSequence>> by_multiplicity(static_cast<std::size_t>(d) + 1);
  for (int m = 1; m <= d; ++m) by_multiplicity[static_cast<std::size_t>(m)] = enumerate_o_sequences(m, cap);

  std::map<std::tuple<int, int, int, int>, BigCount> memo;
  auto O = [&](int p, int n, int k, int m) -> const BigCount& {
    const auto key = std::make_tuple(p, n, k, m);
    auto it = memo.find(key);
    if (it == memo.end()) {
      const std::span<const OSequence> seqs =
          (m >= 1 && m <= d) ? std::span<const OSequence>(by_multiplicity[static_cast<std::size_t>(m)])
                             : std::span<const OSequence>();
      it = memo.emplace(key, count_opnkd_in(p, n, k, m, seqs)).first;
    }
    return it->second;
  };

  BigCount total = 1;
  for (int l = 1; l <= d - 2; ++l)
    for (int k = 1; k <= d - 2; ++k)
      for (int i = k; i <= d - 2; ++i)
        for (int j = j0; j <= d - 2; ++j) {
          const BigCount& left = O(d - l - 1, d - 1, i, d - j);
          if (left.is_zero()) continue;
          total += left * O(d - l, i - 1, k - 1, j);
        }
  return total;
}

}  // namespace

BigCount od_via_closed_sums(int d, int cap) { return closed_quadruple_sum(d, 1, cap); }
BigCount ad_via_closed_sums(int d, int cap) { return closed_quadruple_sum(d, 2, cap); }

}  // namespace oseq
