#pragma once

// Fixed-width multi-limb arithmetic over runs of polynomial coefficients.
//
// Coefficients are stored planar: limb l of element j lives at
// data[l * stride + j], least significant limb first. Every kernel works
// modulo 2^(64*width) and reports whether any true result needed more limbs;
// callers treat that as "retry at a wider width", never as a value.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace oseq::kernels {

inline constexpr int kMaxWidth = 8;

struct PlanarMut {
  std::uint64_t* data;
  std::size_t stride;
};

struct PlanarConst {
  const std::uint64_t* data;
  std::size_t stride;
};

using MulAccFn = bool (*)(int width, PlanarMut acc, const std::uint64_t* scalar, PlanarConst b, std::size_t len);
using AddAccFn = bool (*)(int width, PlanarMut acc, PlanarConst b, std::size_t len);

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);

/// True when this binary carries the AVX2 kernels and the CPU runs them.
bool avx2_available();

/// Backend chosen at first use: AVX2 when available unless OSEQ_KERNEL=scalar.
Backend active_backend();

/// Overrides the runtime choice; throws std::invalid_argument if unavailable.
void set_backend(Backend backend);

/// acc[j] += scalar * b[j] for j < len. Returns true on overflow.
bool mul_acc(int width, PlanarMut acc, const std::uint64_t* scalar, PlanarConst b, std::size_t len);

/// acc[j] += b[j] for j < len. Returns true on overflow.
bool add_acc(int width, PlanarMut acc, PlanarConst b, std::size_t len);

namespace scalar {
bool mul_acc(int width, PlanarMut acc, const std::uint64_t* scalar, PlanarConst b, std::size_t len);
bool add_acc(int width, PlanarMut acc, PlanarConst b, std::size_t len);
}  // namespace scalar

namespace avx2 {
/// Only callable when avx2_available().
bool mul_acc(int width, PlanarMut acc, const std::uint64_t* scalar, PlanarConst b, std::size_t len);
bool add_acc(int width, PlanarMut acc, PlanarConst b, std::size_t len);
}  // namespace avx2

}  // namespace oseq::kernels
