#include "atlas/element_set.hpp"

#include <cassert>

namespace atlas {
namespace {

const simd::BitKernels& k() { return simd::active_kernels(); }

}  // namespace

ElementSet::ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

ElementSet ElementSet::full(std::size_t universe) {
  ElementSet s(universe);
  for (auto& w : s.words_) w = ~Word{0};
  if (universe % 64 != 0 && !s.words_.empty()) s.words_.back() = (Word{1} << (universe % 64)) - 1;
  return s;
}

ElementSet ElementSet::of(std::size_t universe, std::span<const Elem> members) {
  ElementSet s(universe);
  for (Elem e : members) s.set(e);
  return s;
}

std::size_t ElementSet::count() const { return k().popcount(words_.data(), words_.size()); }

bool ElementSet::empty() const { return k().none(words_.data(), words_.size()); }

bool ElementSet::is_subset_of(const ElementSet& other) const {
  assert(universe_ == other.universe_);
  return k().subset(words_.data(), other.words_.data(), words_.size());
}

bool ElementSet::intersects(const ElementSet& other) const {
  assert(universe_ == other.universe_);
  return k().intersects(words_.data(), other.words_.data(), words_.size());
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  assert(universe_ == other.universe_);
  k().and_words(words_.data(), other.words_.data(), words_.data(), words_.size());
  return *this;
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  assert(universe_ == other.universe_);
  k().or_words(words_.data(), other.words_.data(), words_.data(), words_.size());
  return *this;
}

ElementSet& ElementSet::subtract(const ElementSet& other) {
  assert(universe_ == other.universe_);
  k().andnot_words(words_.data(), other.words_.data(), words_.data(), words_.size());
  return *this;
}

bool ElementSet::operator==(const ElementSet& other) const {
  return universe_ == other.universe_ && k().equal(words_.data(), other.words_.data(), words_.size());
}

std::strong_ordering ElementSet::lex_compare(const ElementSet& other) const {
  if (universe_ != other.universe_) return universe_ <=> other.universe_;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word diff = words_[i] ^ other.words_[i];
    if (diff == 0) continue;
    // The lowest differing bit decides; whoever has it set sorts later.
    const Word low = diff & (~diff + 1);
    return (words_[i] & low) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::size_t ElementSet::hash() const {
  // splitmix-style mixing per word; stable across runs and platforms
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ universe_;
  for (Word w : words_) {
    std::uint64_t z = w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    h ^= z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

std::vector<Elem> ElementSet::members() const {
  std::vector<Elem> out;
  out.reserve(count());
  for_each([&](Elem e) { out.push_back(e); });
  return out;
}

Elem ElementSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
  return static_cast<Elem>(universe_);
}

}  // namespace atlas
