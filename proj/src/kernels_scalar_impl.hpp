#pragma once

// Reference limb kernels. Included by both the scalar and the AVX2 translation
// units (the latter for loop tails), so everything here has internal linkage.

#include <cstddef>
#include <cstdint>

#include "oseq/kernels.hpp"

namespace oseq::kernels {
namespace {

template <int W>
bool scalar_mul_acc(PlanarMut acc, const std::uint64_t* s, PlanarConst b, std::size_t len) {
  bool overflow = false;
  for (std::size_t j = 0; j < len; ++j) {
    std::uint64_t bj[W];
    std::uint64_t any = 0;
    for (int l = 0; l < W; ++l) {
      bj[l] = b.data[static_cast<std::size_t>(l) * b.stride + j];
      any |= bj[l];
    }
    if (any == 0) continue;

    std::uint64_t prod[W] = {};
    for (int ls = 0; ls < W; ++ls) {
      if (s[ls] == 0) continue;
      std::uint64_t carry = 0;
      for (int lb = 0; ls + lb < W; ++lb) {
        const unsigned __int128 x = static_cast<unsigned __int128>(s[ls]) * bj[lb] + prod[ls + lb] + carry;
        prod[ls + lb] = static_cast<std::uint64_t>(x);
        carry = static_cast<std::uint64_t>(x >> 64);
      }
      if (carry != 0) overflow = true;
      for (int lb = W - ls; lb < W; ++lb)
        if (bj[lb] != 0) overflow = true;
    }

    std::uint64_t carry = 0;
    for (int l = 0; l < W; ++l) {
      std::uint64_t& cell = acc.data[static_cast<std::size_t>(l) * acc.stride + j];
      const unsigned __int128 x = static_cast<unsigned __int128>(cell) + prod[l] + carry;
      cell = static_cast<std::uint64_t>(x);
      carry = static_cast<std::uint64_t>(x >> 64);
    }
    if (carry != 0) overflow = true;
  }
  return overflow;
}

template <int W>
bool scalar_add_acc(PlanarMut acc, PlanarConst b, std::size_t len) {
  bool overflow = false;
  for (std::size_t j = 0; j < len; ++j) {
    std::uint64_t carry = 0;
    for (int l = 0; l < W; ++l) {
      std::uint64_t& cell = acc.data[static_cast<std::size_t>(l) * acc.stride + j];
      const unsigned __int128 x =
          static_cast<unsigned __int128>(cell) + b.data[static_cast<std::size_t>(l) * b.stride + j] + carry;
      cell = static_cast<std::uint64_t>(x);
      carry = static_cast<std::uint64_t>(x >> 64);
    }
    if (carry != 0) overflow = true;
  }
  return overflow;
}

template <template <int> class Op, typename... Args>
bool dispatch_width(int width, Args&&... args) {
  switch (width) {
    case 1: return Op<1>::run(args...);
    case 2: return Op<2>::run(args...);
    case 3: return Op<3>::run(args...);
    case 4: return Op<4>::run(args...);
    case 5: return Op<5>::run(args...);
    case 6: return Op<6>::run(args...);
    case 7: return Op<7>::run(args...);
    case 8: return Op<8>::run(args...);
    default: return true;
  }
}

}  // namespace
}  // namespace oseq::kernels
