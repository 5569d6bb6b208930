#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oseq/calibration.hpp"
#include "oseq/combinatorics.hpp"
#include "oseq/dataset_io.hpp"
#include "oseq/engine.hpp"
#include "oseq/kernels.hpp"
#include "oseq/properties.hpp"

namespace oseq::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  int max_d = 0;  // 0: not given
  int threads = 1;
  std::string checkpoint_dir;
  int checkpoint_every = 25;
  int enumeration_cap = kDefaultEnumerationCap;
  std::string reference_file;
  std::string lower_shift_range = "from_8";
  std::string output_dir = ".";
  std::string data_file;
  double time_budget = 0.0;
  bool resume = true;
};

enum class Kind { upper, lower, both };

struct CalibrateArgs {
  Kind kind = Kind::both;
  int horizon = 0;  // 0: whole dataset
  int predict_to = 0;
  bool svg = false;
};

struct PredictArgs {
  Kind kind = Kind::upper;
  int horizon = 0;
  int from = 0;
  int to = 0;
};

struct PlotArgs {
  std::vector<std::string> series;
  std::vector<std::string> labels;
  std::string name = "plot.svg";
  std::string title;
  std::string y_label;
};

struct ExportArgs {
  std::string checkpoint;
  bool layer_csv = false;
};

class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string env_name(const std::string& flag) {
  std::string name = "OSEQ_";
  for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

CLI::Option* with_env(CLI::Option* opt, const std::string& flag) { return opt->envname(env_name(flag)); }

void add_engine_flags(CLI::App* cmd, RunConfig& cfg) {
  with_env(cmd->add_option("--max-d", cfg.max_d, "largest multiplicity D")->check(CLI::PositiveNumber), "max-d");
  with_env(cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber), "threads");
  with_env(cmd->add_option("--checkpoint-dir", cfg.checkpoint_dir, "directory for layer checkpoints"),
           "checkpoint-dir");
  with_env(cmd->add_option("--checkpoint-every", cfg.checkpoint_every, "checkpoint every N layers")
               ->check(CLI::PositiveNumber),
           "checkpoint-every");
  with_env(cmd->add_option("--time-budget", cfg.time_budget, "wall-clock limit in seconds (0: none)")
               ->check(CLI::NonNegativeNumber),
           "time-budget");
  cmd->add_flag("!--no-resume", cfg.resume, "ignore existing checkpoints");
}

void add_out_flag(CLI::App* cmd, RunConfig& cfg) {
  with_env(cmd->add_option("--out", cfg.output_dir, "output directory"), "out");
}

void add_data_flag(CLI::App* cmd, RunConfig& cfg) {
  with_env(cmd->add_option("--data", cfg.data_file, "dataset CSV (d,O_d[,A_d])")->check(CLI::ExistingFile), "data");
}

void add_shift_flag(CLI::App* cmd, RunConfig& cfg) {
  with_env(cmd->add_option("--lower-shift-range", cfg.lower_shift_range, "lower shift range: from_8 or from_2")
               ->check(CLI::IsMember({"from_8", "from_2"})),
           "lower-shift-range");
}

CLI::Option* add_kind_flag(CLI::App* cmd, Kind& kind, bool allow_both) {
  std::map<std::string, Kind> kinds{{"upper", Kind::upper}, {"lower", Kind::lower}};
  if (allow_both) kinds.emplace("both", Kind::both);
  return cmd->add_option("--kind", kind, "bound to calibrate")->transform(CLI::CheckedTransformer(kinds));
}

ShiftRange shift_range(const RunConfig& cfg) {
  return cfg.lower_shift_range == "from_2" ? ShiftRange::from_2 : ShiftRange::from_8;
}

CountTable compute_table(const RunConfig& cfg, std::ostream& err) {
  EngineOptions options;
  options.threads = cfg.threads;
  options.checkpoint_every = cfg.checkpoint_every;
  options.resume = cfg.resume;
  options.time_budget = cfg.time_budget;
  if (!cfg.checkpoint_dir.empty()) options.checkpoint_dir = fs::path(cfg.checkpoint_dir);
  options.on_layer = [&err](const LayerEvent& e) {
    if (e.from_checkpoint) {
      err << "resumed from checkpoint at p=" << e.p << " (D=" << e.D << ")\n";
      return;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "layer p=%d/%d width=%d %.3fs\n", e.p, e.D, e.width, e.seconds);
    err << buf << std::flush;
  };
  EngineStats stats;
  CountTable table = run_iterative(cfg.max_d, options, &stats);
  char buf[160];
  std::snprintf(buf, sizeof buf, "done: D=%d kernel=%s threads=%d limbs=%d widenings=%d %.3fs\n", cfg.max_d,
                std::string(kernels::backend_name(kernels::active_backend())).c_str(), cfg.threads,
                stats.final_width, stats.widenings, stats.seconds);
  err << buf;
  return table;
}

CountTable truncated(const CountTable& table, int D) {
  if (D >= table.D) return table;
  return CountTable::from_o(std::vector<BigCount>(table.O.begin(), table.O.begin() + D));
}

// Dataset from --data, else computed up to --max-d.
CountTable obtain_table(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.data_file.empty()) {
    CountTable table = read_counts_csv(cfg.data_file);
    if (cfg.max_d > table.D)
      throw DatasetError(cfg.data_file + " covers d <= " + std::to_string(table.D) + ", --max-d asks for " +
                         std::to_string(cfg.max_d));
    return cfg.max_d > 0 ? truncated(table, cfg.max_d) : table;
  }
  if (cfg.max_d > 0) return compute_table(cfg, err);
  const fs::path fallback = fs::path(cfg.output_dir) / "od.csv";
  if (fs::exists(fallback)) return read_counts_csv(fallback);
  throw DatasetError("no dataset: pass --data, --max-d, or run compute into --out first");
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.max_d < 1) throw CLI::ValidationError("compute", "--max-d is required");
  const CountTable table = compute_table(cfg, err);
  const fs::path path = fs::path(cfg.output_dir) / "od.csv";
  write_counts_csv(table, path);
  out << "wrote " << path.string() << " (" << table.D << " rows)\n";
  return kExitOk;
}

PropertyVerdict oracle_verdict(const CountTable& table, int cap) {
  PropertyVerdict v{"enumeration-oracle", true, {}, 1, std::min(table.D, cap)};
  for (int d = 1; d <= v.range_hi; ++d) {
    const auto count = enumerate_o_sequences(d, cap).size();
    if (table.o(d) != BigCount(count)) v.fail(d, "O_d != " + std::to_string(count));
  }
  return v;
}

PropertyVerdict recount_verdict(const CountTable& table) {
  PropertyVerdict v{"growth-recount", true, {}, 1, table.D};
  const auto o = count_o_sequences_by_growth(table.D);
  for (int d = 1; d <= table.D; ++d)
    if (table.o(d) != o[static_cast<std::size_t>(d - 1)]) v.fail(d, "O_d differs from recount");
  return v;
}

PropertyVerdict reference_verdict(const CountTable& table, const std::map<int, BigCount>& ref) {
  const int upto = std::min(table.D, ref.empty() ? 0 : ref.rbegin()->first);
  PropertyVerdict v{"reference-diff", true, {}, 1, upto};
  for (int d = 1; d <= upto; ++d)
    if (ref.at(d) != table.o(d)) v.fail(d, "reference " + to_decimal(ref.at(d)) + " vs " + to_decimal(table.o(d)));
  return v;
}

int cmd_verify(const RunConfig& cfg, int ratio_start, std::ostream& out, std::ostream& err) {
  const CountTable table = obtain_table(cfg, err);
  std::vector<PropertyVerdict> verdicts;
  verdicts.push_back(is_sub_fibonacci(table.O));
  verdicts.back().name = "O-subfibonacci";
  if (table.D >= 6) verdicts.push_back(check_A_subfibonacci(table.A));
  verdicts.push_back(check_difference_identity(table.O, table.A));
  if (table.D > ratio_start) verdicts.push_back(check_ratio_decreasing(table.O, ratio_start));
  if (table.D >= 3) verdicts.push_back(check_sz_sandwich(table.O));
  verdicts.push_back(oracle_verdict(table, cfg.enumeration_cap));
  verdicts.push_back(recount_verdict(table));
  if (!cfg.reference_file.empty()) verdicts.push_back(reference_verdict(table, ingest_reference(cfg.reference_file)));

  std::ostringstream report;
  bool all = true;
  for (const auto& v : verdicts) {
    report << format_verdict(v) << '\n';
    all = all && v.holds;
  }
  const RobertsDiagnostic rd = roberts_diagnostic(table.O);
  report << "info roberts-diagnostic: log(O_D)/D=" << fmt(rd.ratio.at(rd.ratio.last_d()))
         << " trailing slope sign=" << rd.trailing_sign << '\n';
  out << report.str();
  const fs::path path = fs::path(cfg.output_dir) / "verify_report.txt";
  fs::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw DatasetError("cannot open " + path.string() + " for writing");
  file << report.str();
  if (!all) throw PropertyViolation("verify: at least one property failed");
  return kExitOk;
}

void require_horizon(const CountTable& table, int horizon) {
  if (horizon > table.D)
    throw DatasetError("horizon " + std::to_string(horizon) + " exceeds available data (d <= " +
                       std::to_string(table.D) + ")");
}

void print_report(const CalibrationReport& r, std::ostream& out) {
  out << to_string(r.kind) << " D=" << r.D << ": F=" << fmt(r.slope_ratio) << " G=" << fmt(r.offset)
      << " shift=" << fmt(r.shift) << " intercept=" << fmt(r.intercept) << '\n';
  out << "  fit logO: " << fmt(r.fit_target.beta0) << " + " << fmt(r.fit_target.beta1) << " d; fit bound: "
      << fmt(r.fit_bound.beta0) << " + " << fmt(r.fit_bound.beta1) << " d\n";
  for (const auto& s : r.stats) out << "  " << s.name << " = " << fmt(s.value) << " at d=" << s.arg << '\n';
}

std::string tag(const CalibrationReport& r) { return std::string(to_string(r.kind)) + "_" + std::to_string(r.D); }

void emit_report_series(const CalibrationReport& r, const Series& log_o, const fs::path& dir, bool svg) {
  const int lo = r.domain_start();
  const std::string name = r.kind == BoundKind::upper ? "up" : "low";
  const Series raw = Series::tabulate(lo, r.D, [&](int d) { return r.bound(d); });
  const Series hat = Series::tabulate(lo, r.D, [&](int d) { return r.rescaled(d); });
  const Series hathat = Series::tabulate(lo, r.D, [&](int d) { return r.calibrated(d); });
  emit_plot_series(dir / ("series_" + name + "_" + std::to_string(r.D) + ".csv"), raw);
  emit_plot_series(dir / ("series_" + name + "_hat_" + std::to_string(r.D) + ".csv"), hat);
  emit_plot_series(dir / ("series_" + name + "_hathat_" + std::to_string(r.D) + ".csv"), hathat);
  if (!svg) return;
  const Series data = Series::tabulate(lo, r.D, [&](int d) { return log_o.at(d); });
  write_svg(dir / ("fig_" + tag(r) + ".svg"),
            {{"log O_d", "black", data}, {name + "(d)", "red", raw}, {name + " calibrated", "blue", hathat}},
            {"log O_d and the " + std::string(to_string(r.kind)) + " bound, D=" + std::to_string(r.D), "d", "", 800,
             500});
  write_svg(dir / ("fig_" + tag(r) + "_rescaled.svg"),
            {{"log O_d", "black", data}, {name + " rescaled", "green", hat}, {name + " calibrated", "blue", hathat}},
            {"Rescaled and calibrated " + std::string(to_string(r.kind)) + " bound, D=" + std::to_string(r.D), "d",
             "", 800, 500});
}

void emit_prediction(const CalibrationReport& r, const Series& log_o, int to, const fs::path& dir, bool svg,
                     std::ostream& out) {
  if (to <= r.D) return;
  const Series pred = predict(r, r.D + 1, to);
  emit_plot_series(dir / ("prediction_" + tag(r) + "_to_" + std::to_string(to) + ".csv"), pred);
  if (log_o.last_d() > r.D) {
    const int hi = std::min(to, log_o.last_d());
    const StatRow ex = max_excess_over_data(r, log_o, r.domain_start(), hi);
    out << "  max(prediction - logO) over [" << r.domain_start() << "," << hi << "] = " << fmt(ex.value)
        << " at d=" << ex.arg << '\n';
  }
  if (svg)
    write_svg(dir / ("fig_prediction_" + tag(r) + ".svg"), {{"prediction", "blue", pred}},
              {"Prediction from D=" + std::to_string(r.D) + " to d=" + std::to_string(to), "d", "", 800, 500});
}

void emit_zone(const CalibrationReport& up, const CalibrationReport& low, int to, const fs::path& dir, bool svg,
               std::ostream& out) {
  const int hi = std::max(to, up.D);
  const PredictionZone zone = prediction_zone(up, low, 2, hi);
  Series lower{2, zone.lower}, upper{2, zone.upper};
  emit_plot_series(dir / ("zone_lower_" + std::to_string(up.D) + "_to_" + std::to_string(hi) + ".csv"), lower);
  emit_plot_series(dir / ("zone_upper_" + std::to_string(up.D) + "_to_" + std::to_string(hi) + ".csv"), upper);
  {
    std::ofstream f(dir / ("zone_" + std::to_string(up.D) + "_to_" + std::to_string(hi) + ".csv"));
    if (!f) throw DatasetError("cannot write zone summary in " + dir.string());
    f << "key,value\nd_lo," << zone.d_lo << "\nd_hi," << zone.d_hi << "\nmax_width," << fmt(zone.max_width)
      << "\nargmax," << zone.argmax << "\ninverted," << zone.inverted.size() << '\n';
  }
  out << "zone [2," << hi << "]: max width " << fmt(zone.max_width) << " at d=" << zone.argmax;
  if (!zone.inverted.empty()) out << " (inverted band at " << zone.inverted.size() << " d, first d=" << zone.inverted[0] << ")";
  out << '\n';
  if (svg)
    write_svg(dir / ("fig_zone_" + std::to_string(up.D) + ".svg"),
              {{"upper calibrated", "red", upper}, {"lower calibrated", "blue", lower}},
              {"Prediction zone, D=" + std::to_string(up.D), "d", "", 800, 500});
}

int cmd_calibrate(const RunConfig& cfg, const CalibrateArgs& args, std::ostream& out, std::ostream& err) {
  const CountTable table = obtain_table(cfg, err);
  const int horizon = args.horizon > 0 ? args.horizon : table.D;
  require_horizon(table, horizon);
  const Series log_o = log_counts(table);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  emit_plot_series(dir / "series_logO.csv", log_o);

  std::optional<CalibrationReport> up, low;
  if (args.kind != Kind::lower) up = calibrate_upper(log_o, horizon);
  if (args.kind != Kind::upper) low = calibrate_lower(log_o, horizon, shift_range(cfg));
  for (const auto* r : {up ? &*up : nullptr, low ? &*low : nullptr}) {
    if (r == nullptr) continue;
    write_calibration_report(*r, dir / ("calibration_" + tag(*r) + ".csv"));
    print_report(*r, out);
    emit_report_series(*r, log_o, dir, args.svg);
    emit_prediction(*r, log_o, args.predict_to, dir, args.svg, out);
  }
  if (up && low) emit_zone(*up, *low, args.predict_to, dir, args.svg, out);
  return kExitOk;
}

int cmd_predict(const RunConfig& cfg, const PredictArgs& args, std::ostream& out, std::ostream& err) {
  const CountTable table = obtain_table(cfg, err);
  const int horizon = args.horizon > 0 ? args.horizon : table.D;
  require_horizon(table, horizon);
  const Series log_o = log_counts(table);
  const CalibrationReport r = args.kind == Kind::upper ? calibrate_upper(log_o, horizon)
                                                       : calibrate_lower(log_o, horizon, shift_range(cfg));
  const int from = args.from > 0 ? args.from : r.domain_start();
  const int to = args.to > 0 ? args.to : std::max(table.D, horizon);
  const Series pred = predict(r, from, to);
  const fs::path path =
      fs::path(cfg.output_dir) / ("prediction_" + tag(r) + "_" + std::to_string(from) + "_" + std::to_string(to) + ".csv");
  emit_plot_series(path, pred);
  out << "wrote " << path.string() << '\n';
  const int hi = std::min(to, table.D);
  if (hi >= from) {
    const StatRow ex = max_excess_over_data(r, log_o, from, hi);
    out << "max(prediction - logO) over [" << from << "," << hi << "] = " << fmt(ex.value) << " at d=" << ex.arg
        << '\n';
  }
  return kExitOk;
}

int cmd_plot(const RunConfig& cfg, const PlotArgs& args, std::ostream& out) {
  static const char* const palette[] = {"black", "red", "blue", "green", "orange", "purple", "brown", "gray"};
  std::vector<PlotLine> lines;
  for (std::size_t i = 0; i < args.series.size(); ++i) {
    const std::string label = i < args.labels.size() ? args.labels[i] : fs::path(args.series[i]).stem().string();
    lines.push_back({label, palette[i % std::size(palette)], read_plot_series(args.series[i])});
  }
  const fs::path path = fs::path(cfg.output_dir) / args.name;
  write_svg(path, lines, {args.title, "d", args.y_label, 800, 500});
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, const ExportArgs& args, std::ostream& out) {
  fs::path source;
  if (!args.checkpoint.empty()) {
    source = args.checkpoint;
  } else if (!cfg.checkpoint_dir.empty()) {
    auto latest = latest_checkpoint(cfg.checkpoint_dir);
    if (!latest) throw CheckpointError("no checkpoint in " + cfg.checkpoint_dir);
    source = *latest;
  } else {
    throw CLI::ValidationError("export", "pass --checkpoint or --checkpoint-dir");
  }
  const Layer layer = load_layer(source, cfg.max_d > 0 ? std::optional<int>(cfg.max_d) : std::nullopt);
  const CountTable table = CountTable::from_o(o_values_from_layer(layer));
  const fs::path path = fs::path(cfg.output_dir) / "od.csv";
  write_counts_csv(table, path);
  out << "wrote " << path.string() << " (d <= " << table.D << " from layer p=" << layer.p() << ", D=" << layer.D()
      << ")\n";
  if (args.layer_csv) {
    const fs::path lpath = fs::path(cfg.output_dir) / ("layer_" + std::to_string(layer.p()) + ".csv");
    std::ofstream f(lpath);
    if (!f) throw DatasetError("cannot open " + lpath.string() + " for writing");
    f << "n,k,d,coefficient\n";
    for (int n = 0; n < layer.D(); ++n)
      for (int k = 0; k <= n; ++k) {
        const TruncPoly poly = layer.poly(n, k);
        for (int d = 0; d <= layer.D(); ++d)
          if (poly[d] != 0) f << n << ',' << k << ',' << d << ',' << to_decimal(poly[d]) << '\n';
      }
    if (!f) throw DatasetError("write failed for " + lpath.string());
    out << "wrote " << lpath.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting finite O-sequences by multiplicity, with bound calibration.\n"
               "Every option can also be set through an OSEQ_<FLAG> environment variable, e.g. OSEQ_MAX_D=100."};
  app.require_subcommand(1);
  RunConfig cfg;
  CalibrateArgs cal;
  PredictArgs pre;
  PlotArgs plot;
  ExportArgs exp;
  int ratio_start = 12;

  auto* compute = app.add_subcommand("compute", "compute O_d and A_d for d <= D into od.csv");
  add_engine_flags(compute, cfg);
  add_out_flag(compute, cfg);

  auto* verify = app.add_subcommand("verify", "run the property suite on a dataset");
  add_engine_flags(verify, cfg);
  add_out_flag(verify, cfg);
  add_data_flag(verify, cfg);
  with_env(verify->add_option("--reference", cfg.reference_file, "reference CSV to diff against")
               ->check(CLI::ExistingFile),
           "reference");
  with_env(verify->add_option("--enumeration-cap", cfg.enumeration_cap, "largest d checked by brute force")
               ->check(CLI::PositiveNumber),
           "enumeration-cap");
  verify->add_option("--ratio-start", ratio_start, "ratio monotonicity checked for d > start");

  auto* calibrate = app.add_subcommand("calibrate", "fit and calibrate the bounds against log O_d");
  add_engine_flags(calibrate, cfg);
  add_out_flag(calibrate, cfg);
  add_data_flag(calibrate, cfg);
  add_shift_flag(calibrate, cfg);
  add_kind_flag(calibrate, cal.kind, true);
  calibrate->add_option("--horizon", cal.horizon, "calibration horizon (default: all data)")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--predict-to", cal.predict_to, "extrapolate the calibrated curves up to this d");
  calibrate->add_flag("--svg", cal.svg, "also render SVG charts");

  auto* predict_cmd = app.add_subcommand("predict", "evaluate a calibrated bound on a range of d");
  add_engine_flags(predict_cmd, cfg);
  add_out_flag(predict_cmd, cfg);
  add_data_flag(predict_cmd, cfg);
  add_shift_flag(predict_cmd, cfg);
  add_kind_flag(predict_cmd, pre.kind, false);
  predict_cmd->add_option("--horizon", pre.horizon, "calibration horizon")->check(CLI::PositiveNumber);
  predict_cmd->add_option("--from", pre.from, "first d")->check(CLI::PositiveNumber);
  predict_cmd->add_option("--to", pre.to, "last d")->check(CLI::PositiveNumber);

  auto* plot_cmd = app.add_subcommand("plot", "render d,value series files as an SVG line chart");
  add_out_flag(plot_cmd, cfg);
  plot_cmd->add_option("series", plot.series, "series files")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--label", plot.labels, "legend labels, in order");
  plot_cmd->add_option("--name", plot.name, "output file name");
  plot_cmd->add_option("--title", plot.title, "chart title");
  plot_cmd->add_option("--y-label", plot.y_label, "y axis label");

  auto* export_cmd = app.add_subcommand("export", "write od.csv (and optionally all entries) from a checkpoint");
  add_out_flag(export_cmd, cfg);
  with_env(export_cmd->add_option("--checkpoint-dir", cfg.checkpoint_dir, "use the latest checkpoint here"),
           "checkpoint-dir");
  export_cmd->add_option("--checkpoint", exp.checkpoint, "checkpoint file")->check(CLI::ExistingFile);
  with_env(export_cmd->add_option("--max-d", cfg.max_d, "expected D")->check(CLI::PositiveNumber), "max-d");
  export_cmd->add_flag("--layer-csv", exp.layer_csv, "also write every n,k,d coefficient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitIo;
  }

  try {
    if (*compute) return cmd_compute(cfg, out, err);
    if (*verify) return cmd_verify(cfg, ratio_start, out, err);
    if (*calibrate) return cmd_calibrate(cfg, cal, out, err);
    if (*predict_cmd) return cmd_predict(cfg, pre, out, err);
    if (*plot_cmd) return cmd_plot(cfg, plot, out);
    if (*export_cmd) return cmd_export(cfg, exp, out);
  } catch (const PropertyViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitPropertyViolation;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitIo;
}

}  // namespace oseq::cli
