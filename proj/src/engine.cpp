#include "oseq/engine.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "oseq/combinatorics.hpp"
#include "oseq/kernels.hpp"

namespace oseq {

CountTable CountTable::from_o(std::vector<BigCount> o_values) {
  CountTable table;
  table.D = static_cast<int>(o_values.size());
  table.A.assign(o_values.size(), BigCount(0));
  for (std::size_t i = 2; i < o_values.size(); ++i) table.A[i] = o_values[i] - o_values[i - 1];
  table.O = std::move(o_values);
  return table;
}

Layer init_layer_p1(int D, int width) {
  Layer layer(1, D, width);
  std::vector<std::uint64_t> one(static_cast<std::size_t>(width), 0);
  one[0] = 1;
  for (int n = 0; n < D; ++n)
    for (int k = 0; k <= n; ++k) {
      if (k + 1 <= D)
        layer.append_window(k + 1, k + 1, one);
      else
        layer.append_zero();
    }
  return layer;
}

namespace {

// Fixed set of workers running indexed tasks; results are written by index,
// so the schedule never affects what is computed.
class WorkerPool {
 public:
  explicit WorkerPool(int threads) {
    for (int w = 1; w < threads; ++w) workers_.emplace_back([this, w] { loop(w); });
  }
  ~WorkerPool() {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : workers_) t.join();
  }
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  /// Runs task(index, worker) for index in [0, count); the caller is worker 0.
  void run(std::size_t count, const std::function<void(std::size_t, int)>& task) {
    if (workers_.empty() || count <= 1) {
      for (std::size_t i = 0; i < count; ++i) task(i, 0);
      return;
    }
    {
      std::lock_guard lock(mutex_);
      task_ = &task;
      count_ = count;
      next_ = 0;
      busy_ = static_cast<int>(workers_.size());
      ++generation_;
    }
    wake_.notify_all();
    drain(0);
    std::unique_lock lock(mutex_);
    done_.wait(lock, [this] { return busy_ == 0; });
    task_ = nullptr;
  }

 private:
  void drain(int worker) {
    for (;;) {
      std::size_t index;
      {
        std::lock_guard lock(mutex_);
        if (next_ >= count_) return;
        index = next_++;
      }
      (*task_)(index, worker);
    }
  }

  void loop(int worker) {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock lock(mutex_);
        wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      drain(worker);
      {
        std::lock_guard lock(mutex_);
        if (--busy_ == 0) done_.notify_one();
      }
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t, int)>* task_ = nullptr;
  std::size_t count_ = 0;
  std::size_t next_ = 0;
  int busy_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

// Degree-indexed planar accumulator (limb l of degree d at data[l*(D+1)+d])
// that remembers which degrees it touched so clearing stays cheap.
class Accumulator {
 public:
  Accumulator(int D, int width)
      : D_(D), width_(width), data_(static_cast<std::size_t>(D + 1) * static_cast<std::size_t>(width), 0) {}

  std::size_t stride() const { return static_cast<std::size_t>(D_) + 1; }
  std::uint64_t* data() { return data_.data(); }
  const std::uint64_t* data() const { return data_.data(); }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  void touch(int lo, int hi) {
    lo_ = std::min(lo_, lo);
    hi_ = std::max(hi_, hi);
  }

  void clear() {
    if (hi_ >= lo_)
      for (int l = 0; l < width_; ++l)
        std::fill(data_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(l) * stride() + static_cast<std::size_t>(lo_)),
                  data_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(l) * stride() + static_cast<std::size_t>(hi_) + 1),
                  0);
    lo_ = D_ + 1;
    hi_ = -1;
  }

 private:
  int D_;
  int width_;
  std::vector<std::uint64_t> data_;
  int lo_ = std::numeric_limits<int>::max();
  int hi_ = -1;
};

// F_{p,n,0} = sum over h of F_{p-1,n,h}.
bool accumulate_row_sum(const Layer& prev, int n, Accumulator& acc) {
  const int width = prev.width();
  bool overflow = false;
  const int h_max = std::min(n, prev.max_nonzero_k());
  for (int h = 0; h <= h_max; ++h) {
    const EntryView e = prev.view(n, h);
    if (e.is_zero()) continue;
    overflow |= kernels::add_acc(width, {acc.data() + e.lo, acc.stride()}, {e.data, e.stride}, e.length());
    acc.touch(e.lo, e.hi);
  }
  return overflow;
}

// F_{p,n,k} = sum_{i=k}^{n} PolyMulTrunc(F_{p-1,n,i}, F_{p,i-1,k-1}, D) for k >= 1.
bool accumulate_convolutions(const Layer& prev, const Layer& curr, int n, int k, Accumulator& acc) {
  const int D = prev.D();
  const int width = prev.width();
  bool overflow = false;
  std::uint64_t scalar[kernels::kMaxWidth];
  const int i_max = std::min(n, prev.max_nonzero_k());
  for (int i = k; i <= i_max; ++i) {
    const EntryView a = prev.view(n, i);
    if (a.is_zero()) continue;
    const EntryView b = curr.view(i - 1, k - 1);
    if (b.is_zero() || a.lo + b.lo > D) continue;
    const int outer_end = std::min(a.hi, D - b.lo);
    for (int da = a.lo; da <= outer_end; ++da) {
      std::uint64_t any = 0;
      for (int l = 0; l < width; ++l) {
        scalar[l] = a.data[static_cast<std::size_t>(l) * a.stride + static_cast<std::size_t>(da - a.lo)];
        any |= scalar[l];
      }
      if (any == 0) continue;
      const int inner_end = std::min(b.hi, D - da);
      const auto len = static_cast<std::size_t>(inner_end - b.lo + 1);
      overflow |= kernels::mul_acc(width, {acc.data() + da + b.lo, acc.stride()}, scalar, {b.data, b.stride}, len);
    }
    acc.touch(a.lo + b.lo, std::min(D, a.hi + b.hi));
  }
  return overflow;
}

struct Pending {
  int lo = 1;
  int hi = 0;
  std::vector<std::uint64_t> planar;
};

void capture(const Accumulator& acc, int width, Pending& out) {
  out.lo = acc.lo();
  out.hi = acc.hi();
  out.planar.clear();
  if (out.hi < out.lo) return;
  const auto len = static_cast<std::size_t>(out.hi - out.lo + 1);
  out.planar.resize(len * static_cast<std::size_t>(width));
  for (int l = 0; l < width; ++l)
    std::copy_n(acc.data() + static_cast<std::size_t>(l) * acc.stride() + static_cast<std::size_t>(out.lo), len,
                out.planar.data() + static_cast<std::size_t>(l) * len);
}

std::optional<Layer> build_layer(const Layer& prev, WorkerPool& pool) {
  if (!prev.complete()) throw std::invalid_argument("next_layer: previous layer is incomplete");
  const int D = prev.D();
  const int width = prev.width();
  Layer curr(prev.p() + 1, D, width);

  std::vector<Accumulator> scratch;
  for (int w = 0; w < pool.size(); ++w) scratch.emplace_back(D, width);
  std::vector<Pending> pending;
  std::vector<char> overflowed(static_cast<std::size_t>(pool.size()), 0);

  for (int n = 0; n < D; ++n) {
    // Rows < n are final; F_{p,i-1,k-1} is zero beyond their largest nonzero k.
    const int k_max = std::min({n, prev.max_nonzero_k(), curr.max_nonzero_k() + 1});

    Accumulator& acc0 = scratch[0];
    acc0.clear();
    if (accumulate_row_sum(prev, n, acc0)) return std::nullopt;
    curr.append_from_buffer(acc0.data(), acc0.stride(), acc0.lo(), acc0.hi());

    if (k_max >= 1) {
      if (pool.size() == 1) {
        for (int k = 1; k <= k_max; ++k) {
          acc0.clear();
          if (accumulate_convolutions(prev, curr, n, k, acc0)) return std::nullopt;
          curr.append_from_buffer(acc0.data(), acc0.stride(), acc0.lo(), acc0.hi());
        }
      } else {
        pending.resize(static_cast<std::size_t>(k_max));
        pool.run(static_cast<std::size_t>(k_max), [&](std::size_t task, int worker) {
          Accumulator& acc = scratch[static_cast<std::size_t>(worker)];
          acc.clear();
          if (accumulate_convolutions(prev, curr, n, static_cast<int>(task) + 1, acc))
            overflowed[static_cast<std::size_t>(worker)] = 1;
          capture(acc, width, pending[task]);
        });
        if (std::any_of(overflowed.begin(), overflowed.end(), [](char c) { return c != 0; })) return std::nullopt;
        for (int k = 1; k <= k_max; ++k) {
          const Pending& entry = pending[static_cast<std::size_t>(k - 1)];
          curr.append_window(entry.lo, entry.hi, entry.planar);
        }
      }
    }
    for (int k = std::max(k_max, 0) + 1; k <= n; ++k) curr.append_zero();
  }
  return curr;
}

void check_threads(int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
}

}  // namespace

std::optional<Layer> try_next_layer(const Layer& prev, int threads) {
  check_threads(threads);
  WorkerPool pool(threads);
  return build_layer(prev, pool);
}

Layer next_layer(const Layer& prev, int threads) {
  check_threads(threads);
  WorkerPool pool(threads);
  if (auto out = build_layer(prev, pool)) return std::move(*out);
  for (int width = prev.width() + 1; width <= kernels::kMaxWidth; ++width) {
    const Layer wider = prev.widened(width);
    if (auto out = build_layer(wider, pool)) return std::move(*out);
  }
  throw BudgetError("next_layer: coefficients exceed " + std::to_string(kernels::kMaxWidth * 64) + " bits");
}

std::vector<BigCount> o_values_from_layer(const Layer& layer) {
  std::vector<BigCount> out;
  const int upto = std::min(layer.p(), layer.D());
  out.reserve(static_cast<std::size_t>(upto));
  for (int d = 1; d <= upto; ++d) out.push_back(layer.coefficient(d - 1, 0, d));
  return out;
}

namespace {

void write_checkpoint(const Layer& layer, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CheckpointError("cannot create checkpoint directory " + dir.string() + ": " + ec.message());
  const auto target = checkpoint_path(dir, layer.p());
  save_layer(layer, target);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.path() != target && name.starts_with("layer_") && name.ends_with(".oseq"))
      std::filesystem::remove(entry.path(), ec);
  }
}

}  // namespace

CountTable run_iterative(int D, const EngineOptions& options, EngineStats* stats) {
  if (D < 1) throw std::invalid_argument("run_iterative: D must be >= 1");
  check_threads(options.threads);
  if (options.checkpoint_every < 1) throw std::invalid_argument("run_iterative: checkpoint_every must be >= 1");
  if (options.initial_width < 1 || options.initial_width > kernels::kMaxWidth)
    throw std::invalid_argument("run_iterative: initial_width out of range");

  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const std::size_t baseline = Layer::resident_count();
  Layer::reset_resident_peak();
  EngineStats local;

  WorkerPool pool(options.threads);
  std::optional<Layer> prev;
  if (options.checkpoint_dir && options.resume) {
    if (auto latest = latest_checkpoint(*options.checkpoint_dir)) {
      prev.emplace(load_layer(*latest, D));
      local.resumed_from = prev->p();
      if (options.on_layer)
        options.on_layer({prev->p(), D, prev->width(), 0.0, Layer::resident_count() - baseline, true});
    }
  }
  if (!prev) prev.emplace(init_layer_p1(D, options.initial_width));

  std::vector<BigCount> o_values = o_values_from_layer(*prev);
  o_values.reserve(static_cast<std::size_t>(D));

  for (int p = prev->p() + 1; p <= D; ++p) {
    const auto layer_started = Clock::now();
    std::optional<Layer> curr = build_layer(*prev, pool);
    while (!curr) {
      if (prev->width() >= kernels::kMaxWidth)
        throw BudgetError("run_iterative: coefficients exceed " + std::to_string(kernels::kMaxWidth * 64) + " bits");
      *prev = prev->widened(prev->width() + 1);
      ++local.widenings;
      curr = build_layer(*prev, pool);
    }
    o_values.push_back(curr->coefficient(p - 1, 0, p));
    *prev = std::move(*curr);
    curr.reset();

    if (options.checkpoint_dir && p % options.checkpoint_every == 0) write_checkpoint(*prev, *options.checkpoint_dir);
    if (options.on_layer) {
      const std::chrono::duration<double> elapsed = Clock::now() - layer_started;
      options.on_layer({p, D, prev->width(), elapsed.count(), Layer::resident_count() - baseline, false});
    }
    const std::chrono::duration<double> total = Clock::now() - started;
    if (options.time_budget > 0 && total.count() > options.time_budget && p < D) {
      if (options.checkpoint_dir && p % options.checkpoint_every != 0) write_checkpoint(*prev, *options.checkpoint_dir);
      throw BudgetError("run_iterative: time budget of " + std::to_string(options.time_budget) +
                        " s exhausted after layer p=" + std::to_string(p));
    }
  }

  local.final_width = prev->width();
  local.peak_resident_layers = Layer::resident_peak() - baseline;
  local.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  if (stats != nullptr) *stats = local;
  return CountTable::from_o(std::move(o_values));
}

}  // namespace oseq
