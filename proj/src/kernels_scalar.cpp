#include "kernels_scalar_impl.hpp"

namespace oseq::kernels::scalar {

namespace {
template <int W>
struct MulAcc {
  static bool run(PlanarMut acc, const std::uint64_t* s, PlanarConst b, std::size_t len) {
    return scalar_mul_acc<W>(acc, s, b, len);
  }
};
template <int W>
struct AddAcc {
  static bool run(PlanarMut acc, PlanarConst b, std::size_t len) { return scalar_add_acc<W>(acc, b, len); }
};
}  // namespace

bool mul_acc(int width, PlanarMut acc, const std::uint64_t* s, PlanarConst b, std::size_t len) {
  return dispatch_width<MulAcc>(width, acc, s, b, len);
}

bool add_acc(int width, PlanarMut acc, PlanarConst b, std::size_t len) {
  return dispatch_width<AddAcc>(width, acc, b, len);
}

}  // namespace oseq::kernels::scalar
