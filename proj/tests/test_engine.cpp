#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oseq/combinatorics.hpp"
#include "oseq/engine.hpp"
#include "oseq/kernels.hpp"
#include "oseq/trunc_poly.hpp"

using namespace oseq;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("oseq_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TruncPoly naive_product(const TruncPoly& a, const TruncPoly& b, int D) {
  std::vector<BigCount> full(static_cast<std::size_t>(2 * D + 1));
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j) full[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  TruncPoly out(D);
  for (int m = 0; m <= D; ++m) out[m] = full[static_cast<std::size_t>(m)];
  return out;
}

BigCount random_big(std::mt19937_64& rng, int bits) {
  BigCount v = 0;
  for (int b = 0; b < bits; b += 64) v = (v << 64) + rng();
  return v >> (bits % 64 == 0 ? 0 : 64 - bits % 64);
}

}  // namespace

TEST_CASE("poly_mul_trunc examples") {
  const auto t = TruncPoly::monomial(1, 3);
  CHECK(poly_mul_trunc(t, t, 3) == TruncPoly::monomial(2, 3));

  TruncPoly a(3);
  a[1] = 1;
  a[2] = 1;
  TruncPoly expected(3);
  expected[2] = 1;
  expected[3] = 2;
  CHECK(poly_mul_trunc(a, a, 3) == expected);

  CHECK(poly_mul_trunc(TruncPoly(3), a, 3).is_zero());
  CHECK_THROWS_AS(poly_mul_trunc(TruncPoly(3), TruncPoly(4), 3), std::invalid_argument);
}

TEST_CASE("poly_mul_trunc matches a naive full product") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const int D = 1 + static_cast<int>(rng() % 64);
    TruncPoly a(D), b(D);
    for (int i = 0; i <= D; ++i) {
      if (rng() % 3 != 0) a[i] = random_big(rng, 128);
      if (rng() % 3 != 0) b[i] = random_big(rng, 128);
    }
    CHECK(poly_mul_trunc(a, b, D) == naive_product(a, b, D));
  }
}

TEST_CASE("first layer") {
  const Layer l3 = init_layer_p1(3);
  CHECK(l3.p() == 1);
  CHECK(l3.complete());
  CHECK(l3.poly(2, 1) == TruncPoly::monomial(2, 3));
  CHECK(l3.poly(0, 0) == TruncPoly::monomial(1, 3));
  const Layer l2 = init_layer_p1(2);
  CHECK(l2.poly(1, 1) == TruncPoly::monomial(2, 2));
  // (2, 2) lies outside the stored triangle n <= D-1; its k+1 = 3 > D anyway.
  CHECK(l2.entry_count() == Layer::entry_index(2, 0));
}

TEST_CASE("layers agree with the constrained-count oracle") {
  constexpr int D = 10;
  std::vector<std::vector<OSequence>> by_d(D + 1);
  for (int d = 1; d <= D; ++d) by_d[d] = enumerate_o_sequences(d);
  Layer layer = init_layer_p1(D);
  for (int p = 1; p <= 4; ++p) {
    if (p > 1) layer = next_layer(layer);
    REQUIRE(layer.p() == p);
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= n; ++k)
        for (int d = 1; d <= D; ++d) CHECK(layer.coefficient(n, k, d) == count_opnkd_in(p, n, k, d, by_d[d]));
  }
  const Layer two = next_layer(init_layer_p1(2));
  CHECK(two.coefficient(1, 0, 2) == 1);
}

TEST_CASE("constant term of every entry is zero") {
  Layer layer = init_layer_p1(9);
  for (int p = 2; p <= 5; ++p) {
    layer = next_layer(layer);
    for (int n = 0; n < 9; ++n)
      for (int k = 0; k <= n; ++k) CHECK(layer.coefficient(n, k, 0) == 0);
  }
}

TEST_CASE("run_iterative small tables") {
  CHECK(run_iterative(1).O == std::vector<BigCount>{1});
  CHECK(run_iterative(2).O == std::vector<BigCount>{1, 1});
  const CountTable t6 = run_iterative(6);
  CHECK(t6.O == std::vector<BigCount>{1, 1, 2, 3, 5, 8});
  CHECK(t6.A == std::vector<BigCount>{0, 0, 1, 1, 2, 3});
  const CountTable t14 = run_iterative(14);
  for (int d = 1; d <= 14; ++d) CHECK(t14.o(d) == enumerate_o_sequences(d).size());
  CHECK_THROWS_AS(run_iterative(0), std::invalid_argument);
}

TEST_CASE("run_iterative agrees with the growth recount, widens, and keeps two layers") {
  EngineStats narrow_stats, wide_stats;
  const CountTable t = run_iterative(320, {}, &narrow_stats);
  CHECK(t.O == count_o_sequences_by_growth(320));
  CHECK(t.o(320) > BigCount(UINT64_MAX));
  CHECK(narrow_stats.peak_resident_layers == 2);
  CHECK(narrow_stats.final_width == 2);
  CHECK(narrow_stats.widenings >= 1);
  for (int d = 2; d <= 320; ++d) CHECK(t.o(d) == t.o(d - 1) + t.a(d));

  EngineOptions wide;
  wide.initial_width = 4;
  CHECK(run_iterative(320, wide, &wide_stats) == t);
  CHECK(wide_stats.widenings == 0);
  CHECK(wide_stats.peak_resident_layers == 2);
}

TEST_CASE("thread count does not change results") {
  EngineOptions one, many;
  many.threads = 5;
  CHECK(run_iterative(90, one) == run_iterative(90, many));
  CHECK_THROWS_AS(run_iterative(5, EngineOptions{.threads = 0}), std::invalid_argument);
}

TEST_CASE("scalar and avx2 engines agree") {
  if (!kernels::avx2_available()) return;
  const auto before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::scalar);
  const CountTable a = run_iterative(110);
  kernels::set_backend(kernels::Backend::avx2);
  const CountTable b = run_iterative(110);
  kernels::set_backend(before);
  CHECK(a == b);
}

TEST_CASE("closed sums") {
  const CountTable t = run_iterative(10);
  for (int d = 3; d <= 10; ++d) {
    CHECK(od_via_closed_sums(d) == t.o(d));
    CHECK(ad_via_closed_sums(d) == t.a(d));
  }
  CHECK(od_via_closed_sums(3) == 2);
  CHECK(ad_via_closed_sums(3) == 1);
  CHECK(ad_via_closed_sums(4) == 1);
  CHECK(od_via_closed_sums(5) == 5);
  CHECK(ad_via_closed_sums(5) == 2);
  CHECK_THROWS_AS(od_via_closed_sums(13), BudgetError);
}

TEST_CASE("checkpoint round trip") {
  const fs::path dir = scratch("roundtrip");
  const Layer p1 = init_layer_p1(5);
  save_layer(p1, dir / "a.oseq");
  const Layer back = load_layer(dir / "a.oseq", 5);
  CHECK(back.p() == 1);
  CHECK(back.same_values(p1));

  Layer big = init_layer_p1(80);
  for (int p = 2; p <= 60; ++p) big = next_layer(big);
  save_layer(big, dir / "b.oseq");
  const Layer big_back = load_layer(dir / "b.oseq");
  CHECK(big_back.same_values(big));
  CHECK(o_values_from_layer(big_back) == o_values_from_layer(big));
}

TEST_CASE("checkpoint header layout") {
  const fs::path dir = scratch("header");
  save_layer(init_layer_p1(3), dir / "h.oseq");
  std::ifstream in(dir / "h.oseq", std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
  REQUIRE(bytes.size() > 20);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "OSEQLYR1");
  auto u32 = [&](std::size_t off) {
    return bytes[off] | bytes[off + 1] << 8 | bytes[off + 2] << 16 | static_cast<std::uint32_t>(bytes[off + 3]) << 24;
  };
  CHECK(u32(8) == kCheckpointVersion);
  CHECK(u32(12) == 1);
  CHECK(u32(16) == 3);
  // Entry (0,0) = t: one term, degree 1, one byte of value 1.
  CHECK(u32(20) == 1);
  CHECK(u32(24) == 1);
  CHECK(u32(28) == 1);
  CHECK(bytes[32] == 1);
}

TEST_CASE("corrupt checkpoints are rejected") {
  const fs::path dir = scratch("corrupt");
  Layer layer = next_layer(init_layer_p1(12));
  save_layer(layer, dir / "ok.oseq");
  CHECK_THROWS_AS(load_layer(dir / "ok.oseq", 13), CheckpointError);
  CHECK_THROWS_AS(load_layer(dir / "missing.oseq"), CheckpointError);

  std::ifstream in(dir / "ok.oseq", std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream(dir / name, std::ios::binary) << content;
    return dir / name;
  };
  CHECK_THROWS_AS(load_layer(write("trunc.oseq", bytes.substr(0, bytes.size() - 3))), CheckpointError);
  CHECK_THROWS_AS(load_layer(write("short.oseq", bytes.substr(0, 10))), CheckpointError);
  CHECK_THROWS_AS(load_layer(write("extra.oseq", bytes + "x")), CheckpointError);
  std::string bad_magic = bytes;
  bad_magic[3] = 'X';
  CHECK_THROWS_AS(load_layer(write("magic.oseq", bad_magic)), CheckpointError);
  std::string bad_version = bytes;
  bad_version[8] = 9;
  CHECK_THROWS_AS(load_layer(write("version.oseq", bad_version)), CheckpointError);
}

TEST_CASE("resume from checkpoint reproduces a cold run") {
  const fs::path dir = scratch("resume");
  const CountTable cold = run_iterative(100);

  EngineOptions opts;
  opts.checkpoint_dir = dir;
  opts.checkpoint_every = 50;
  run_iterative(100, opts);
  CHECK(latest_checkpoint(dir) == checkpoint_path(dir, 100));

  // Rebuild a p=50 checkpoint and resume from it.
  fs::remove_all(dir);
  Layer layer = init_layer_p1(100);
  for (int p = 2; p <= 50; ++p) layer = next_layer(layer);
  save_layer(layer, checkpoint_path(dir, 50));
  EngineStats stats;
  const CountTable resumed = run_iterative(100, opts, &stats);
  CHECK(stats.resumed_from == 50);
  CHECK(resumed == cold);

  opts.resume = false;
  EngineStats fresh;
  CHECK(run_iterative(100, opts, &fresh) == cold);
  CHECK(fresh.resumed_from == 0);

  opts.resume = true;
  CHECK_THROWS_AS(run_iterative(120, opts), CheckpointError);
}

TEST_CASE("time budget stops after a checkpoint") {
  const fs::path dir = scratch("budget");
  EngineOptions opts;
  opts.checkpoint_dir = dir;
  opts.checkpoint_every = 1000;
  opts.time_budget = 1e-9;
  CHECK_THROWS_AS(run_iterative(40, opts), BudgetError);
  const auto latest = latest_checkpoint(dir);
  REQUIRE(latest.has_value());
  opts.time_budget = 0;
  CHECK(run_iterative(40, opts) == run_iterative(40));
}
