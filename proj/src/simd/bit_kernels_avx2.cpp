// Compiled with -mavx2 -mpopcnt; only reached through the dispatcher after a
// CPUID check.
#include <immintrin.h>

#include <bit>

#include "atlas/simd/bit_kernels.hpp"

namespace atlas::simd {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void and_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) computes ~x & y
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

// Nibble-table popcount (Mula): pshufb lookup per 4-bit lane, summed with sad.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(load(a + i)), _mm256_setzero_si256()));
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  // testc(b, a) == 1 iff (~b & a) == 0
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
  for (; i < n; ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < n; ++i)
    if ((a[i] & b[i]) != 0) return true;
  return false;
}

bool none(const Word* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = load(a + i);
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != 0) return false;
  return true;
}

constexpr BitKernels kAvx2{
    "avx2", and_words, or_words, andnot_words, popcount, equal, subset, intersects, none,
};

}  // namespace

const BitKernels* avx2_kernels_impl() { return &kAvx2; }

}  // namespace atlas::simd
