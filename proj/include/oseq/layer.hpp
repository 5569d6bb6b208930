#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oseq/bigcount.hpp"
#include "oseq/trunc_poly.hpp"

namespace oseq {

/// Read-only window onto one stored polynomial: degrees lo..hi, planar limbs.
struct EntryView {
  int lo = 1;
  int hi = 0;
  const std::uint64_t* data = nullptr;
  std::size_t stride = 0;

  bool is_zero() const { return hi < lo; }
  std::size_t length() const { return is_zero() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
};

/// The triangular table {F_{p,n,k} : 0 <= k <= n <= D-1} for one p.
///
/// Each entry keeps only its nonzero degree window, as `width` 64-bit limbs
/// per coefficient. Entries are appended in row-major (n, then k) order.
class Layer {
 public:
  Layer(int p, int D, int width);
  Layer(const Layer& other);
  Layer(Layer&& other) noexcept;
  Layer& operator=(const Layer& other);
  Layer& operator=(Layer&& other) noexcept;
  ~Layer();

  int p() const { return p_; }
  int D() const { return D_; }
  int width() const { return width_; }

  static std::size_t entry_index(int n, int k) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2 + static_cast<std::size_t>(k);
  }
  std::size_t entry_count() const { return entries_.size(); }
  bool complete() const { return entries_.size() == entry_index(D_, 0); }

  /// Zero for k > n or any index outside the table.
  EntryView view(int n, int k) const;
  bool is_zero(int n, int k) const { return view(n, k).is_zero(); }
  BigCount coefficient(int n, int k, int d) const;
  TruncPoly poly(int n, int k) const;

  /// Largest k with a nonzero entry in any row; -1 for an all-zero layer.
  int max_nonzero_k() const { return max_nonzero_k_; }

  /// Appends the next entry from a planar buffer indexed by degree
  /// (limb l of degree d at src[l * stride + d]); zeros at the ends are trimmed.
  void append_from_buffer(const std::uint64_t* src, std::size_t stride, int lo, int hi);
  /// Appends an already-trimmed window (limb l of degree lo+j at src[l * len + j]).
  void append_window(int lo, int hi, std::span<const std::uint64_t> planar);
  void append_zero();
  /// Appends coefficients given exactly; throws std::overflow_error if one needs more limbs.
  void append_exact(int lo, std::span<const BigCount> coefficients);

  /// Same values with more limbs per coefficient.
  Layer widened(int new_width) const;

  /// Equal p, D and coefficients; limb width is irrelevant.
  bool same_values(const Layer& other) const;

  /// Number of Layer objects currently holding storage, and the high-water mark.
  static std::size_t resident_count();
  static std::size_t resident_peak();
  static void reset_resident_peak();

 private:
  struct Entry {
    int lo = 1;
    int hi = 0;
    std::size_t offset = 0;
  };

  void push_entry(Entry e);
  void append_trimmed(const std::uint64_t* src, std::size_t stride, int lo, int hi);
  void acquire();
  void release();

  int p_;
  int D_;
  int width_;
  int max_nonzero_k_ = -1;
  int cursor_n_ = 0;  // (n, k) of the next entry to append
  int cursor_k_ = 0;
  bool resident_ = false;
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> arena_;
};

/// Converts `width` limbs (least significant first, stride apart) to a BigCount.
BigCount limbs_to_bigcount(const std::uint64_t* limbs, std::size_t stride, int width);

}  // namespace oseq
