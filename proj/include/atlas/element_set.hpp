#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "atlas/simd/bit_kernels.hpp"

namespace atlas {

using Elem = std::uint32_t;

// Fixed-universe bitset over element indices 0..universe-1. Bit patterns are
// the canonical identity of subgroups, so equality, hashing and ordering are
// all defined on the words.
class ElementSet {
 public:
  using Word = simd::Word;

  ElementSet() = default;
  explicit ElementSet(std::size_t universe);
  static ElementSet full(std::size_t universe);
  static ElementSet of(std::size_t universe, std::span<const Elem> members);

  std::size_t universe() const { return universe_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }

  bool test(Elem e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void set(Elem e) { words_[e >> 6] |= Word{1} << (e & 63); }
  void reset(Elem e) { words_[e >> 6] &= ~(Word{1} << (e & 63)); }

  std::size_t count() const;
  bool empty() const;
  bool is_subset_of(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  ElementSet& operator&=(const ElementSet& other);
  ElementSet& operator|=(const ElementSet& other);
  // this &= ~other
  ElementSet& subtract(const ElementSet& other);

  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }

  bool operator==(const ElementSet& other) const;

  // Lexicographic order on the bit string b_0 b_1 ... with 0 < 1.
  std::strong_ordering lex_compare(const ElementSet& other) const;

  std::size_t hash() const;

  std::vector<Elem> members() const;

  // Visits set bits in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<Elem>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  // Smallest set element, or universe() when empty.
  Elem first() const;

 private:
  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace atlas
