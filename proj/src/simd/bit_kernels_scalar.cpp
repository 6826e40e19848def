#include <bit>

#include "atlas/simd/bit_kernels.hpp"

namespace atlas::simd {
namespace {

void and_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if ((a[i] & b[i]) != 0) return true;
  return false;
}

bool none(const Word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != 0) return false;
  return true;
}

constexpr BitKernels kScalar{
    "scalar", and_words, or_words, andnot_words, popcount, equal, subset, intersects, none,
};

}  // namespace

const BitKernels& scalar_kernels() { return kScalar; }

}  // namespace atlas::simd
