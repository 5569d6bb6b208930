#include <doctest.h>

#include <random>

#include "oseq/combinatorics.hpp"
#include "oseq/engine.hpp"
#include "oseq/properties.hpp"

using namespace oseq;

namespace {

std::vector<BigCount> big(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

const CountTable& table_150() {
  static const CountTable t = CountTable::from_o(count_o_sequences_by_growth(150));
  return t;
}

bool any_fails(const CountTable& t) {
  return !is_sub_fibonacci(t.O).holds || !check_A_subfibonacci(t.A).holds ||
         !check_difference_identity(t.O, t.A).holds || !check_ratio_decreasing(t.O).holds ||
         !check_sz_sandwich(t.O).holds;
}

}  // namespace

TEST_CASE("sub-Fibonacci") {
  CHECK(is_sub_fibonacci(big({1, 1, 2, 3, 5, 8})).holds);
  const auto bad = is_sub_fibonacci(big({1, 1, 3}));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witnesses.size() == 1);
  CHECK(bad.witnesses[0].index == 3);
  CHECK_FALSE(is_sub_fibonacci(big({1, 2, 3})).holds);
  CHECK_FALSE(is_sub_fibonacci(big({1, 1, 2, 1})).holds);
  CHECK_FALSE(is_sub_fibonacci(big({1, 1})).holds);
  const auto& t = table_150();
  CHECK(is_sub_fibonacci(std::span(t.O).first(14)).holds);
  CHECK(is_sub_fibonacci(t.O).holds);
}

TEST_CASE("A sequence") {
  const auto& t = table_150();
  CHECK(t.a(3) == 1);
  CHECK(t.a(4) == 1);
  CHECK(t.a(5) == 2);
  CHECK(t.a(6) == 3);
  CHECK(check_A_subfibonacci(std::span(t.A).first(8)).holds);
  CHECK(check_A_subfibonacci(t.A).holds);

  // A_5..A_8 = 2, 3, 4, 6: lowering A_7 by one to 3 keeps every inequality.
  std::vector<BigCount> mutated = t.A;
  mutated[6] -= 2;
  const auto v = check_A_subfibonacci(mutated);
  CHECK_FALSE(v.holds);
  CHECK(v.witnesses.front().index == 6);
  CHECK(v.witnesses.back().index == 9);
}

TEST_CASE("ratio monotonicity") {
  const auto& t = table_150();
  CHECK(check_ratio_decreasing(std::span(t.O).first(60)).holds);
  const auto v = check_ratio_decreasing(t.O);
  CHECK(v.holds);
  CHECK(v.range_lo == 12);
  CHECK(v.range_hi == 150);
  const auto early = check_ratio_decreasing(std::span(t.O).first(30), 2);
  CHECK_FALSE(early.holds);
  for (const auto& w : early.witnesses) CHECK(w.index <= 12);

  // A geometric sequence has equal ratios: every d is a tie.
  std::vector<BigCount> geo;
  for (int i = 0; i < 20; ++i) geo.push_back(BigCount(1) << i);
  const auto ties = check_ratio_decreasing(geo);
  CHECK_FALSE(ties.holds);
  CHECK(ties.witnesses.front().tag == "tie");
}

TEST_CASE("difference identity") {
  const auto& t = table_150();
  CHECK(check_difference_identity(t.O, t.A).holds);
  std::vector<BigCount> a = t.A;
  a[40] += 1;
  const auto v = check_difference_identity(t.O, a);
  CHECK_FALSE(v.holds);
  CHECK(v.witnesses.front().index == 41);
}

TEST_CASE("partition sandwich") {
  const auto& t = table_150();
  CHECK(partition_number(2) == 2);
  CHECK(t.o(3) == 2);
  CHECK(partition_number(9) == 30);
  CHECK(t.o(10) >= 30);
  CHECK(check_sz_sandwich(t.O).holds);
  std::vector<BigCount> o = t.O;
  o[9] = 29;  // O_10 below p(9)
  const auto v = check_sz_sandwich(o);
  CHECK_FALSE(v.holds);
  CHECK(v.witnesses.front().index == 10);
}

TEST_CASE("Roberts diagnostic") {
  const auto& t = table_150();
  const RobertsDiagnostic r = roberts_diagnostic(t.O);
  CHECK(r.ratio.at(1) == 0.0);
  CHECK(r.trailing_sign == -1);
  for (int d = 3; d <= 150; ++d) CHECK(r.ratio.at(d) <= r.envelope.at(d) + 1e-12);
}

TEST_CASE("single +1 mutations are detected") {
  std::mt19937 rng(5);
  const CountTable base = CountTable::from_o(count_o_sequences_by_growth(60));
  int detected = 0;
  for (int round = 0; round < 10; ++round) {
    const int d = 3 + static_cast<int>(rng() % 58);
    std::vector<BigCount> o = base.O;
    o[static_cast<std::size_t>(d - 1)] += 1;
    CountTable mutated = base;
    mutated.O = o;  // A left as computed from the true table
    detected += any_fails(mutated) ? 1 : 0;
  }
  CHECK(detected == 10);
}
