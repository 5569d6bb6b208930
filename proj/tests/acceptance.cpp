// Acceptance criteria 1-8. Run with no arguments for all of them, or pass
// criterion numbers. Prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oseq/calibration.hpp"
#include "oseq/combinatorics.hpp"
#include "oseq/dataset_io.hpp"
#include "oseq/engine.hpp"
#include "oseq/properties.hpp"

using namespace oseq;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kReferenceRel = 1e-6;
constexpr double kFitIdentityRel = 1e-9;
constexpr double kCoverageAbs = 1e-12;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects sub-check failures for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }

  void close(double got, double want, double rel, const std::string& what) {
    const double err = std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: got %.12g, want %.12g (rel %.2e > %.0e)", what.c_str(), got, want, err, rel);
    expect(err <= rel, buf);
  }

  void note(const std::string& text) { notes_.push_back(text); }

  bool ok() const { return failures_.empty(); }
  int count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  int count_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

const std::vector<BigCount>& growth_counts(int D) {
  static std::vector<BigCount> cache;
  if (static_cast<int>(cache.size()) < D) cache = count_o_sequences_by_growth(D);
  return cache;
}

void criterion_1(Check& c) {
  const auto t0 = Clock::now();
  const CountTable t = run_iterative(14);
  const double secs = seconds_since(t0);
  for (int d = 1; d <= 14; ++d)
    c.expect(t.o(d) == enumerate_o_sequences(d).size(), "O_" + std::to_string(d) + " differs from enumeration");
  const std::vector<BigCount> first{1, 1, 2, 3, 5, 8};
  c.expect(std::vector<BigCount>(t.O.begin(), t.O.begin() + 6) == first, "O_1..O_6 != 1,1,2,3,5,8");
  c.expect(t.a(3) == 1 && t.a(4) == 1, "A_3 = A_4 = 1");
  c.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s >= 10 s");
}

void criterion_2(Check& c) {
  const auto t0 = Clock::now();
  constexpr int D = 10;
  std::vector<std::vector<OSequence>> by_d(D + 1);
  for (int d = 1; d <= D; ++d) by_d[d] = enumerate_o_sequences(d);
  Layer layer = init_layer_p1(D);
  int mismatches = 0;
  for (int p = 1; p <= 4; ++p) {
    if (p > 1) layer = next_layer(layer);
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= n; ++k)
        for (int d = 1; d <= D; ++d)
          if (layer.coefficient(n, k, d) != count_opnkd_in(p, n, k, d, by_d[d])) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " layer coefficients differ from the oracle");
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s >= 60 s");
}

void criterion_3(Check& c) {
  const CountTable t = run_iterative(10);
  for (int d = 3; d <= 10; ++d) {
    c.expect(od_via_closed_sums(d) == t.o(d), "closed sum O_" + std::to_string(d));
    c.expect(ad_via_closed_sums(d) == t.a(d), "closed sum A_" + std::to_string(d));
  }
}

void expect_verdict(Check& c, const PropertyVerdict& v) {
  std::string what = v.name;
  if (!v.holds) what += ": first witness d=" + std::to_string(v.witnesses.front().index) + " " + v.witnesses.front().tag;
  c.expect(v.holds, what);
}

void criterion_4(Check& c) {
  const auto t0 = Clock::now();
  const CountTable t = run_iterative(150);
  expect_verdict(c, is_sub_fibonacci(t.O));
  expect_verdict(c, check_A_subfibonacci(t.A));
  expect_verdict(c, check_difference_identity(t.O, t.A));
  const auto sandwich = check_sz_sandwich(t.O);
  c.expect(sandwich.range_lo == 3 && sandwich.range_hi == 150, "sandwich range");
  expect_verdict(c, sandwich);
  const auto ratio = check_ratio_decreasing(t.O, 12);
  c.expect(ratio.range_lo == 12 && ratio.range_hi == 150, "ratio range");
  expect_verdict(c, ratio);
  c.note("D=150 computed in " + std::to_string(seconds_since(t0)) + " s");
}

void criterion_5(Check& c) {
  const CountTable t = run_iterative(250);
  c.expect(t.O == std::vector<BigCount>(growth_counts(250).begin(), growth_counts(250).begin() + 250),
           "engine O_d differs from the growth recount");
  const CalibrationReport r = calibrate_upper(log_counts(t), 250);
  c.close(r.slope_ratio, 0.252677948393, kReferenceRel, "F(250)");
  c.close(r.offset, 0.733721091341, kReferenceRel, "G(250)");
}

void criterion_6(Check& c) {
  const auto t0 = Clock::now();
  EngineOptions opts;
  opts.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const CountTable t = run_iterative(1100, opts);
  c.note("D=1100 computed in " + std::to_string(seconds_since(t0)) + " s with " + std::to_string(opts.threads) +
         " thread(s)");
  c.expect(t.O == growth_counts(1100), "engine O_d differs from the growth recount");

  const Series lo = log_counts(t);
  const CalibrationReport up = calibrate_upper(lo, 1100);
  c.close(up.fit_target.beta0, 19.12701407, kReferenceRel, "beta0 logO");
  c.close(up.fit_target.beta1, 0.07467593363, kReferenceRel, "beta1 logO");
  c.close(up.fit_bound.beta0, 68.22861859, kReferenceRel, "beta0 up");
  c.close(up.fit_bound.beta1, 0.3310061843, kReferenceRel, "beta1 up");
  c.close(up.slope_ratio, 0.2256028352, kReferenceRel, "F(1100)");
  c.close(up.offset, 4.574661581, kReferenceRel, "G(1100)");
  c.close(up.shift, 0.840217291747, kReferenceRel, "upper shift");
  c.close(up.stat("min(up-logO)").value, 0.9760727451, kReferenceRel, "min(up-logO)");
  c.close(up.stat("min(up_hat-logO)").value, -0.840217291747, kReferenceRel, "min(up_hat-logO)");
  c.expect(std::fabs(up.stat("min(up_hathat-logO)").value) <= kCoverageAbs, "min(up_hathat-logO) = 0");
  c.close(up.stat("max|up-logO|").value, 313.681462325, kReferenceRel, "max|up-logO|");
  c.close(up.stat("max|up_hat-logO|").value, 4.4289158466, kReferenceRel, "max|up_hat-logO|");
  c.close(up.stat("max(up_hathat-logO)").value, 5.26913313834, kReferenceRel, "max(up_hathat-logO)");

  const CalibrationReport low = calibrate_lower(lo, 1100, ShiftRange::from_8);
  c.close(low.fit_target.beta0, 19.1970929, kReferenceRel, "beta0 logO (lower fit)");
  c.close(low.fit_target.beta1, 0.0745804584, kReferenceRel, "beta1 logO (lower fit)");
  c.close(low.fit_bound.beta0, 16.2119508, kReferenceRel, "beta0 low");
  c.close(low.fit_bound.beta1, 0.0591201050, kReferenceRel, "beta1 low");
  c.close(low.slope_ratio, 1.26150754299, kReferenceRel, "lower slope ratio");
  c.close(low.shift, 0.0554619907174, kReferenceRel, "lower shift");
  c.close(low.offset, -1.30986731154, kReferenceRel, "lower offset");
  c.close(low.stat("min(logO-low)").value, 0.0556814562012, kReferenceRel, "min(logO-low)");
  c.close(low.stat("min(logO-low_hat)").value, -0.0554619907174, kReferenceRel, "min(logO-low_hat)");
  c.expect(std::fabs(low.stat("min(logO-low_hathat)").value) <= kCoverageAbs, "min(logO-low_hathat) = 0");
  c.close(low.stat("max|logO-low|").value, 18.677299565, kReferenceRel, "max|logO-low|");
  c.close(low.stat("max|logO-low_hat|").value, 0.462761696891, kReferenceRel, "max|logO-low_hat|");
  c.close(low.stat("max(logO-low_hathat)").value, 0.518223687609, kReferenceRel, "max(logO-low_hathat)");

  const CalibrationReport up500 = calibrate_upper(lo, 500);
  c.close(up500.slope_ratio, 0.240139019901, kReferenceRel, "F(500)");
  c.close(up500.offset, 2.08262890146, kReferenceRel, "G(500)");
  const CalibrationReport up250 = calibrate_upper(lo, 250);
  c.close(max_excess_over_data(up250, lo, 1, 1100).value, 9.16621718467, kReferenceRel,
          "max over [1,1100] of prediction(250) - logO");
  c.close(max_excess_over_data(up500, lo, 1, 1100).value, 5.39351115845, kReferenceRel,
          "max over [1,1100] of prediction(500) - logO");

  const PredictionZone zone = prediction_zone(up, low, 2, 2000);
  c.close(zone.max_width, 6.31289617142, kReferenceRel, "zone max width over [2,2000]");
  c.expect(zone.inverted.empty(), "zone band inverted");
  if (std::fabs(zone.max_width - 6.31289617142) > kReferenceRel * 6.31289617142) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "aligned width at d=%d is %.12g; upper(1999) - lower(2000) = %.12g", zone.argmax,
                  zone.max_width, up.calibrated(1999) - low.calibrated(2000));
    c.note(buf);
  }
}

void criterion_7(Check& c) {
  for (const int D : {20, 100, 400}) {
    const Series lo = log_counts(CountTable::from_o(
        std::vector<BigCount>(growth_counts(400).begin(), growth_counts(400).begin() + D)));
    const std::string at = " at D=" + std::to_string(D);
    const CalibrationReport up = calibrate_upper(lo, D);
    const FitLine fh = least_squares(Series::tabulate(1, D, [&](int d) { return up.rescaled(d); }), 1, D);
    c.close(fh.beta0, up.fit_target.beta0, kFitIdentityRel, "rescaled beta0" + at);
    c.close(fh.beta1, up.fit_target.beta1, kFitIdentityRel, "rescaled beta1" + at);
    bool covered = true;
    for (int d = 1; d <= D; ++d) covered = covered && up.calibrated(d) >= lo.at(d) - kCoverageAbs;
    c.expect(covered, "upper coverage" + at);

    const CalibrationReport low = calibrate_lower(lo, D);
    const FitLine fl = least_squares(Series::tabulate(2, D, [&](int d) { return low.rescaled(d); }), 2, D);
    c.close(fl.beta0, low.fit_target.beta0, kFitIdentityRel, "rescaled lower beta0" + at);
    c.close(fl.beta1, low.fit_target.beta1, kFitIdentityRel, "rescaled lower beta1" + at);
    bool below = true;
    for (int d = low.shift_lo; d <= D; ++d) below = below && low.calibrated(d) <= lo.at(d) + kCoverageAbs;
    c.expect(below, "lower coverage" + at);
  }
}

std::string od_csv_bytes(int threads) {
  EngineOptions opts;
  opts.threads = threads;
  const CountTable t = run_iterative(60, opts);
  const fs::path path = fs::temp_directory_path() / ("oseq_acceptance_od_" + std::to_string(threads) + ".csv");
  write_counts_csv(t, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(path);
  return ss.str();
}

void criterion_8(Check& c) {
  const std::string one = od_csv_bytes(1), eight = od_csv_bytes(8);
  c.expect(!one.empty(), "od.csv written");
  c.expect(one == eight, "od.csv bytes differ between 1 and 8 threads");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "engine equals enumeration for d <= 14", criterion_1},
      {2, "layers p <= 4 equal the constrained-count oracle", criterion_2},
      {3, "closed sums equal engine values for 3 <= d <= 10", criterion_3},
      {4, "property suite at D = 150", criterion_4},
      {5, "upper calibration at D = 250", criterion_5},
      {6, "reference constants at D = 1100", criterion_6},
      {7, "rescale identity and shift coverage", criterion_7},
      {8, "od.csv identical with 1 and 8 threads", criterion_8},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& crit : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), crit.id) == wanted.end()) continue;
    Check c;
    const auto t0 = Clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s (%d checks, %.1f s)\n", c.ok() ? "PASS" : "FAIL", crit.id, crit.title,
                c.count(), seconds_since(t0));
    for (const auto& f : c.failures()) std::printf("    failed: %s\n", f.c_str());
    for (const auto& n : c.notes()) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
    failed += c.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
