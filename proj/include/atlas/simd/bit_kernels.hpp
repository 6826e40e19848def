#pragma once

// Word-level kernels behind ElementSet. Every kernel exists as a scalar
// reference and (on x86-64) an AVX2 variant; the active table is chosen once at
// startup from CPUID and can be pinned with SUBGROUP_ATLAS_SIMD=scalar|avx2.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace atlas::simd {

using Word = std::uint64_t;

struct BitKernels {
  std::string_view name;
  // out[i] = a[i] & b[i]
  void (*and_words)(const Word* a, const Word* b, Word* out, std::size_t n);
  // out[i] = a[i] | b[i]
  void (*or_words)(const Word* a, const Word* b, Word* out, std::size_t n);
  // out[i] = a[i] & ~b[i]
  void (*andnot_words)(const Word* a, const Word* b, Word* out, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
  bool (*equal)(const Word* a, const Word* b, std::size_t n);
  // every bit of a is set in b
  bool (*subset)(const Word* a, const Word* b, std::size_t n);
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  bool (*none)(const Word* a, std::size_t n);
};

enum class KernelKind { Scalar, Avx2 };

const BitKernels& scalar_kernels();
// Null when the AVX2 translation unit was not compiled in.
const BitKernels* avx2_kernels();
bool cpu_has_avx2();

const BitKernels& active_kernels();
// Test hook; returns false (and changes nothing) if the kind is unavailable.
bool force_kernels(KernelKind kind);

}  // namespace atlas::simd
