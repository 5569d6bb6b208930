#include "kernels_scalar_impl.hpp"

#if defined(OSEQ_BUILD_AVX2)
#include <immintrin.h>
#endif

#include <stdexcept>

namespace oseq::kernels::avx2 {

#if defined(OSEQ_BUILD_AVX2)

namespace {

inline __m256i load(const std::uint64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// All-ones lanes where a < b as unsigned 64-bit integers.
inline __m256i less_u64(__m256i a, __m256i b) {
  const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  return _mm256_cmpgt_epi64(_mm256_xor_si256(b, sign), _mm256_xor_si256(a, sign));
}

// Full 64x64 -> 128 product per lane from four 32x32 -> 64 multiplies.
inline void mul_wide(__m256i a, __m256i b, __m256i& lo, __m256i& hi) {
  const __m256i mask32 = _mm256_set1_epi64x(0xFFFFFFFFLL);
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i ll = _mm256_mul_epu32(a, b);
  const __m256i lh = _mm256_mul_epu32(a, b_hi);
  const __m256i hl = _mm256_mul_epu32(a_hi, b);
  const __m256i hh = _mm256_mul_epu32(a_hi, b_hi);
  const __m256i mid = _mm256_add_epi64(_mm256_add_epi64(_mm256_srli_epi64(ll, 32), _mm256_and_si256(lh, mask32)),
                                       _mm256_and_si256(hl, mask32));
  lo = _mm256_or_si256(_mm256_and_si256(ll, mask32), _mm256_slli_epi64(mid, 32));
  hi = _mm256_add_epi64(_mm256_add_epi64(hh, _mm256_srli_epi64(lh, 32)),
                        _mm256_add_epi64(_mm256_srli_epi64(hl, 32), _mm256_srli_epi64(mid, 32)));
}

template <int W>
struct MulAcc {
  static bool run(PlanarMut acc, const std::uint64_t* s, PlanarConst b, std::size_t len) {
    int top = -1;  // highest nonzero limb of the scalar
    for (int l = 0; l < W; ++l)
      if (s[l] != 0) top = l;
    if (top < 0) return false;

    __m256i sv[W];
    for (int l = 0; l < W; ++l) sv[l] = _mm256_set1_epi64x(static_cast<long long>(s[l]));
    __m256i overflow = _mm256_setzero_si256();

    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
      __m256i bv[W];
      for (int l = 0; l < W; ++l) bv[l] = load(b.data + static_cast<std::size_t>(l) * b.stride + j);

      __m256i prod[W];
      for (int l = 0; l < W; ++l) prod[l] = _mm256_setzero_si256();
      for (int ls = 0; ls <= top; ++ls) {
        if (s[ls] == 0) continue;
        __m256i carry = _mm256_setzero_si256();
        for (int lb = 0; ls + lb < W; ++lb) {
          __m256i lo, hi;
          mul_wide(sv[ls], bv[lb], lo, hi);
          const __m256i t1 = _mm256_add_epi64(lo, prod[ls + lb]);
          const __m256i c1 = less_u64(t1, lo);
          const __m256i t2 = _mm256_add_epi64(t1, carry);
          const __m256i c2 = less_u64(t2, t1);
          prod[ls + lb] = t2;
          carry = _mm256_sub_epi64(_mm256_sub_epi64(hi, c1), c2);
        }
        overflow = _mm256_or_si256(overflow, carry);
        for (int lb = W - ls; lb < W; ++lb) overflow = _mm256_or_si256(overflow, bv[lb]);
      }

      __m256i carry = _mm256_setzero_si256();
      for (int l = 0; l < W; ++l) {
        std::uint64_t* cell = acc.data + static_cast<std::size_t>(l) * acc.stride + j;
        const __m256i a = load(cell);
        const __m256i t1 = _mm256_add_epi64(a, prod[l]);
        const __m256i c1 = less_u64(t1, a);
        const __m256i t2 = _mm256_add_epi64(t1, carry);
        const __m256i c2 = less_u64(t2, t1);
        store(cell, t2);
        carry = _mm256_srli_epi64(_mm256_or_si256(c1, c2), 63);
      }
      overflow = _mm256_or_si256(overflow, carry);
    }

    bool flagged = !_mm256_testz_si256(overflow, overflow);
    if (j < len) {
      PlanarMut acc_tail{acc.data + j, acc.stride};
      PlanarConst b_tail{b.data + j, b.stride};
      flagged |= scalar_mul_acc<W>(acc_tail, s, b_tail, len - j);
    }
    return flagged;
  }
};

template <int W>
struct AddAcc {
  static bool run(PlanarMut acc, PlanarConst b, std::size_t len) {
    __m256i overflow = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
      __m256i carry = _mm256_setzero_si256();
      for (int l = 0; l < W; ++l) {
        std::uint64_t* cell = acc.data + static_cast<std::size_t>(l) * acc.stride + j;
        const __m256i a = load(cell);
        const __m256i t1 = _mm256_add_epi64(a, load(b.data + static_cast<std::size_t>(l) * b.stride + j));
        const __m256i c1 = less_u64(t1, a);
        const __m256i t2 = _mm256_add_epi64(t1, carry);
        const __m256i c2 = less_u64(t2, t1);
        store(cell, t2);
        carry = _mm256_srli_epi64(_mm256_or_si256(c1, c2), 63);
      }
      overflow = _mm256_or_si256(overflow, carry);
    }
    bool flagged = !_mm256_testz_si256(overflow, overflow);
    if (j < len) {
      PlanarMut acc_tail{acc.data + j, acc.stride};
      PlanarConst b_tail{b.data + j, b.stride};
      flagged |= scalar_add_acc<W>(acc_tail, b_tail, len - j);
    }
    return flagged;
  }
};

}  // namespace

bool compiled() { return true; }

bool mul_acc(int width, PlanarMut acc, const std::uint64_t* s, PlanarConst b, std::size_t len) {
  return dispatch_width<MulAcc>(width, acc, s, b, len);
}

bool add_acc(int width, PlanarMut acc, PlanarConst b, std::size_t len) {
  return dispatch_width<AddAcc>(width, acc, b, len);
}

#else

bool compiled() { return false; }

bool mul_acc(int, PlanarMut, const std::uint64_t*, PlanarConst, std::size_t) {
  throw std::logic_error("AVX2 kernels were not built into this binary");
}

bool add_acc(int, PlanarMut, PlanarConst, std::size_t) {
  throw std::logic_error("AVX2 kernels were not built into this binary");
}

#endif

}  // namespace oseq::kernels::avx2
