#include "oseq/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace oseq::kernels {

namespace avx2 {
bool compiled();
}

namespace {

struct Table {
  MulAccFn mul_acc;
  AddAccFn add_acc;
  Backend backend;
};

Table table_for(Backend backend) {
  if (backend == Backend::avx2) return {&avx2::mul_acc, &avx2::add_acc, Backend::avx2};
  return {&scalar::mul_acc, &scalar::add_acc, Backend::scalar};
}

Table initial_table() {
  const char* forced = std::getenv("OSEQ_KERNEL");
  if (forced != nullptr && std::string(forced) == "scalar") return table_for(Backend::scalar);
  return table_for(avx2_available() ? Backend::avx2 : Backend::scalar);
}

const Table& table_of(Backend backend) {
  static const Table scalar_table = table_for(Backend::scalar);
  static const Table avx2_table = table_for(Backend::avx2);
  return backend == Backend::avx2 ? avx2_table : scalar_table;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> ptr{&table_of(initial_table().backend)};
  return ptr;
}

void check_width(int width) {
  if (width < 1 || width > kMaxWidth)
    throw std::invalid_argument("limb width " + std::to_string(width) + " outside [1, " +
                                std::to_string(kMaxWidth) + "]");
}

}  // namespace

std::string_view backend_name(Backend backend) { return backend == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool available = avx2::compiled() && __builtin_cpu_supports("avx2");
  return available;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed)->backend; }

void set_backend(Backend backend) {
  if (backend == Backend::avx2 && !avx2_available())
    throw std::invalid_argument("AVX2 kernels are not available on this machine");
  current().store(&table_of(backend), std::memory_order_relaxed);
}

bool mul_acc(int width, PlanarMut acc, const std::uint64_t* s, PlanarConst b, std::size_t len) {
  check_width(width);
  return current().load(std::memory_order_relaxed)->mul_acc(width, acc, s, b, len);
}

bool add_acc(int width, PlanarMut acc, PlanarConst b, std::size_t len) {
  check_width(width);
  return current().load(std::memory_order_relaxed)->add_acc(width, acc, b, len);
}

}  // namespace oseq::kernels
