#pragma once

// Layered computation of O_d for 1 <= d <= D through the truncated generating
// functions F_{p,n,k}(t) = sum_{d=1}^{D} O(p,n,k,d) t^d.
//
// Layer p is built from layer p-1 alone:
//   F_{p,n,0} = sum_{h=0}^{n} F_{p-1,n,h}
//   F_{p,n,k} = sum_{i=k}^{n} F_{p-1,n,i} * F_{p,i-1,k-1}   (truncated at D)
// with rows visited n ascending, then k ascending, so every F_{p,i-1,k-1}
// on the right is already final. Only two layers are held at any time.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "oseq/bigcount.hpp"
#include "oseq/layer.hpp"

namespace oseq {

/// O_d and A_d for d = 1..D.
struct CountTable {
  int D = 0;
  std::vector<BigCount> O;  // O[d-1]
  std::vector<BigCount> A;  // A[d-1]; A_1 = A_2 = 0

  const BigCount& o(int d) const { return O[static_cast<std::size_t>(d - 1)]; }
  const BigCount& a(int d) const { return A[static_cast<std::size_t>(d - 1)]; }

  /// Builds the table from O values, filling A as first differences.
  static CountTable from_o(std::vector<BigCount> o_values);

  bool operator==(const CountTable&) const = default;
};

struct LayerEvent {
  int p = 0;
  int D = 0;
  int width = 0;
  double seconds = 0.0;
  std::size_t resident_layers = 0;
  bool from_checkpoint = false;
};

struct EngineOptions {
  int threads = 1;
  std::optional<std::filesystem::path> checkpoint_dir;
  int checkpoint_every = 25;
  bool resume = true;
  int initial_width = 1;
  /// Wall-clock limit in seconds, 0 for none. When exceeded after a layer the
  /// layer is checkpointed (if a directory is set) and BudgetError is thrown.
  double time_budget = 0.0;
  std::function<void(const LayerEvent&)> on_layer;
};

struct EngineStats {
  std::size_t peak_resident_layers = 0;
  int final_width = 0;
  int widenings = 0;
  int resumed_from = 0;  // layer p loaded from a checkpoint, 0 for a cold start
  double seconds = 0.0;
};

/// Raised when a checkpoint cannot be used or written.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F_{1,n,k} = t^{k+1} for k+1 <= D and n >= k.
Layer init_layer_p1(int D, int width = 1);

/// Layer p from layer p-1. Widens the limb representation as needed, so the
/// result may be wider than `prev`.
Layer next_layer(const Layer& prev, int threads = 1);

/// Same as next_layer at a fixed limb width; nullopt if some coefficient
/// needs more limbs than `width` (prev must already have that width).
std::optional<Layer> try_next_layer(const Layer& prev, int threads = 1);

/// O_d = coefficient of t^d in F_{d,d-1,0}. Layer p holds this for every d <= p
/// because h_1 < p is automatic once p >= d.
std::vector<BigCount> o_values_from_layer(const Layer& layer);

CountTable run_iterative(int D, const EngineOptions& options = {}, EngineStats* stats = nullptr);

/// Closed quadruple sums for O_d and A_d (d >= 3) with brute-force factors.
BigCount od_via_closed_sums(int d, int cap = 12);
BigCount ad_via_closed_sums(int d, int cap = 12);

// Checkpoints: header {"OSEQLYR1", u32 version, u32 p, u32 D}, then every
// (n, k) entry in row-major order as u32 count followed by
// count x (u32 degree, u32 byte length, little-endian magnitude bytes).
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_layer(const Layer& layer, const std::filesystem::path& path);
/// Throws CheckpointError on bad magic, version, D mismatch, or truncation.
Layer load_layer(const std::filesystem::path& path, std::optional<int> expected_D = std::nullopt);

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, int p);
/// Highest-p checkpoint in `dir`, if any.
std::optional<std::filesystem::path> latest_checkpoint(const std::filesystem::path& dir);

}  // namespace oseq
