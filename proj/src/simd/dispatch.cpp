#include <atomic>
#include <cstdlib>
#include <string_view>

#include "atlas/simd/bit_kernels.hpp"

namespace atlas::simd {

#if defined(ATLAS_HAVE_AVX2)
const BitKernels* avx2_kernels_impl();
#endif

const BitKernels* avx2_kernels() {
#if defined(ATLAS_HAVE_AVX2)
  return avx2_kernels_impl();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(ATLAS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

namespace {

const BitKernels* select_initial() {
  const char* env = std::getenv("SUBGROUP_ATLAS_SIMD");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return &scalar_kernels();
  if (cpu_has_avx2() && avx2_kernels() != nullptr) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const BitKernels*>& active_slot() {
  static std::atomic<const BitKernels*> slot{select_initial()};
  return slot;
}

}  // namespace

const BitKernels& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

bool force_kernels(KernelKind kind) {
  if (kind == KernelKind::Scalar) {
    active_slot().store(&scalar_kernels());
    return true;
  }
  if (!cpu_has_avx2() || avx2_kernels() == nullptr) return false;
  active_slot().store(avx2_kernels());
  return true;
}

}  // namespace atlas::simd
