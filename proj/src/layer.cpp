#include "oseq/layer.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

namespace oseq {

namespace {

std::atomic<std::size_t> g_resident{0};
std::atomic<std::size_t> g_peak{0};

}  // namespace

BigCount limbs_to_bigcount(const std::uint64_t* limbs, std::size_t stride, int width) {
  BigCount value = 0;
  for (int l = width - 1; l >= 0; --l) {
    value <<= 64;
    value += limbs[static_cast<std::size_t>(l) * stride];
  }
  return value;
}

Layer::Layer(int p, int D, int width) : p_(p), D_(D), width_(width) {
  if (D < 1) throw std::invalid_argument("Layer: D must be >= 1");
  if (p < 1) throw std::invalid_argument("Layer: p must be >= 1");
  if (width < 1) throw std::invalid_argument("Layer: width must be >= 1");
  entries_.reserve(entry_index(D, 0));
  acquire();
}

Layer::Layer(const Layer& other)
    : p_(other.p_),
      D_(other.D_),
      width_(other.width_),
      max_nonzero_k_(other.max_nonzero_k_),
      cursor_n_(other.cursor_n_),
      cursor_k_(other.cursor_k_),
      entries_(other.entries_),
      arena_(other.arena_) {
  acquire();
}

Layer::Layer(Layer&& other) noexcept
    : p_(other.p_),
      D_(other.D_),
      width_(other.width_),
      max_nonzero_k_(other.max_nonzero_k_),
      cursor_n_(other.cursor_n_),
      cursor_k_(other.cursor_k_),
      resident_(other.resident_),
      entries_(std::move(other.entries_)),
      arena_(std::move(other.arena_)) {
  other.resident_ = false;
  other.entries_.clear();
  other.arena_.clear();
}

Layer& Layer::operator=(const Layer& other) {
  if (this != &other) {
    Layer copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Layer& Layer::operator=(Layer&& other) noexcept {
  if (this != &other) {
    release();
    p_ = other.p_;
    D_ = other.D_;
    width_ = other.width_;
    max_nonzero_k_ = other.max_nonzero_k_;
    cursor_n_ = other.cursor_n_;
    cursor_k_ = other.cursor_k_;
    resident_ = other.resident_;
    entries_ = std::move(other.entries_);
    arena_ = std::move(other.arena_);
    other.resident_ = false;
    other.entries_.clear();
    other.arena_.clear();
  }
  return *this;
}

Layer::~Layer() { release(); }

void Layer::acquire() {
  resident_ = true;
  const std::size_t now = g_resident.fetch_add(1) + 1;
  std::size_t peak = g_peak.load();
  while (now > peak && !g_peak.compare_exchange_weak(peak, now)) {
  }
}

void Layer::release() {
  if (resident_) {
    g_resident.fetch_sub(1);
    resident_ = false;
  }
}

std::size_t Layer::resident_count() { return g_resident.load(); }
std::size_t Layer::resident_peak() { return g_peak.load(); }
void Layer::reset_resident_peak() { g_peak.store(g_resident.load()); }

EntryView Layer::view(int n, int k) const {
  if (n < 0 || k < 0 || k > n || n >= D_) return {};
  const std::size_t index = entry_index(n, k);
  if (index >= entries_.size()) return {};
  const Entry& e = entries_[index];
  if (e.hi < e.lo) return {};
  return {e.lo, e.hi, arena_.data() + e.offset, static_cast<std::size_t>(e.hi - e.lo + 1)};
}

BigCount Layer::coefficient(int n, int k, int d) const {
  const EntryView v = view(n, k);
  if (v.is_zero() || d < v.lo || d > v.hi) return 0;
  return limbs_to_bigcount(v.data + (d - v.lo), v.stride, width_);
}

TruncPoly Layer::poly(int n, int k) const {
  TruncPoly out(D_);
  const EntryView v = view(n, k);
  for (int d = v.lo; d <= v.hi; ++d) out[d] = limbs_to_bigcount(v.data + (d - v.lo), v.stride, width_);
  return out;
}

void Layer::push_entry(Entry e) {
  if (complete()) throw std::logic_error("Layer: table already complete");
  entries_.push_back(e);
  if (e.hi >= e.lo) max_nonzero_k_ = std::max(max_nonzero_k_, cursor_k_);
  if (++cursor_k_ > cursor_n_) {
    ++cursor_n_;
    cursor_k_ = 0;
  }
}

void Layer::append_zero() { push_entry(Entry{}); }

void Layer::append_from_buffer(const std::uint64_t* src, std::size_t stride, int lo, int hi) {
  lo = std::max(lo, 0);
  hi = std::min(hi, D_);
  append_trimmed(src, stride, lo, hi);
}

void Layer::append_trimmed(const std::uint64_t* src, std::size_t stride, int lo, int hi) {
  // src is indexed by absolute degree: limb l of degree d at src[l * stride + d].
  auto nonzero = [&](int d) {
    for (int l = 0; l < width_; ++l)
      if (src[static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(d)] != 0) return true;
    return false;
  };
  while (lo <= hi && !nonzero(lo)) ++lo;
  while (hi >= lo && !nonzero(hi)) --hi;
  if (hi < lo) {
    append_zero();
    return;
  }
  if (complete()) throw std::logic_error("Layer: table already complete");
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t offset = arena_.size();
  arena_.resize(offset + len * static_cast<std::size_t>(width_));
  for (int l = 0; l < width_; ++l)
    std::copy_n(src + static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(lo), len,
                arena_.data() + offset + static_cast<std::size_t>(l) * len);
  push_entry(Entry{lo, hi, offset});
}

void Layer::append_window(int lo, int hi, std::span<const std::uint64_t> planar) {
  if (hi < lo) {
    append_zero();
    return;
  }
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  if (planar.size() != len * static_cast<std::size_t>(width_))
    throw std::invalid_argument("Layer::append_window: buffer size does not match window");
  if (lo < 0 || hi > D_) throw std::invalid_argument("Layer::append_window: degrees outside 0..D");
  // Re-trim in case the window carries zeros at either end.
  int first = 0;
  int last = static_cast<int>(len) - 1;
  auto nonzero = [&](int j) {
    for (int l = 0; l < width_; ++l)
      if (planar[static_cast<std::size_t>(l) * len + static_cast<std::size_t>(j)] != 0) return true;
    return false;
  };
  while (first <= last && !nonzero(first)) ++first;
  while (last >= first && !nonzero(last)) --last;
  if (last < first) {
    append_zero();
    return;
  }
  if (complete()) throw std::logic_error("Layer: table already complete");
  const auto kept = static_cast<std::size_t>(last - first + 1);
  const std::size_t offset = arena_.size();
  arena_.resize(offset + kept * static_cast<std::size_t>(width_));
  for (int l = 0; l < width_; ++l)
    std::copy_n(planar.data() + static_cast<std::size_t>(l) * len + static_cast<std::size_t>(first), kept,
                arena_.data() + offset + static_cast<std::size_t>(l) * kept);
  push_entry(Entry{lo + first, lo + last, offset});
}

void Layer::append_exact(int lo, std::span<const BigCount> coefficients) {
  const int hi = lo + static_cast<int>(coefficients.size()) - 1;
  if (coefficients.empty()) {
    append_zero();
    return;
  }
  if (lo < 0 || hi > D_) throw std::invalid_argument("Layer::append_exact: degrees outside 0..D");
  const std::size_t len = coefficients.size();
  std::vector<std::uint64_t> planar(len * static_cast<std::size_t>(width_), 0);
  for (std::size_t j = 0; j < len; ++j) {
    BigCount rest = coefficients[j];
    for (int l = 0; l < width_; ++l) {
      planar[static_cast<std::size_t>(l) * len + j] = static_cast<std::uint64_t>(rest & 0xFFFFFFFFFFFFFFFFULL);
      rest >>= 64;
    }
    if (!rest.is_zero()) throw std::overflow_error("Layer::append_exact: coefficient exceeds limb width");
  }
  append_window(lo, hi, planar);
}

Layer Layer::widened(int new_width) const {
  if (new_width < width_) throw std::invalid_argument("Layer::widened: cannot narrow");
  Layer out(p_, D_, new_width);
  out.entries_.reserve(entries_.size());
  out.arena_.reserve(arena_.size() / static_cast<std::size_t>(width_) * static_cast<std::size_t>(new_width));
  for (const Entry& e : entries_) {
    if (e.hi < e.lo) {
      out.append_zero();
      continue;
    }
    const auto len = static_cast<std::size_t>(e.hi - e.lo + 1);
    const std::size_t offset = out.arena_.size();
    out.arena_.insert(out.arena_.end(), arena_.begin() + static_cast<std::ptrdiff_t>(e.offset),
                      arena_.begin() + static_cast<std::ptrdiff_t>(e.offset + len * static_cast<std::size_t>(width_)));
    out.arena_.resize(offset + len * static_cast<std::size_t>(new_width), 0);
    out.push_entry(Entry{e.lo, e.hi, offset});
  }
  return out;
}

bool Layer::same_values(const Layer& other) const {
  if (p_ != other.p_ || D_ != other.D_ || entries_.size() != other.entries_.size()) return false;
  for (int n = 0; n < D_; ++n)
    for (int k = 0; k <= n; ++k) {
      const EntryView a = view(n, k);
      const EntryView b = other.view(n, k);
      if (a.lo != b.lo || a.hi != b.hi) {
        if (a.is_zero() && b.is_zero()) continue;
        return false;
      }
      for (int d = a.lo; d <= a.hi; ++d)
        if (limbs_to_bigcount(a.data + (d - a.lo), a.stride, width_) !=
            limbs_to_bigcount(b.data + (d - b.lo), b.stride, other.width_))
          return false;
    }
  return true;
}

}  // namespace oseq
