#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "atlas/group/subgroup.hpp"

namespace atlas {

class Homomorphism {
 public:
  Homomorphism() = default;

  // Verifies the homomorphism law; throws InvalidGroup when it fails.
  static Homomorphism make(FiniteGroup source, FiniteGroup target, std::vector<Elem> map);
  // Extends generator images (one per source generator) to the whole source.
  static Homomorphism from_generator_images(FiniteGroup source, FiniteGroup target, std::span<const Elem> images);
  // No law check. Used for fault injection and by callers that validate later.
  static Homomorphism unchecked(FiniteGroup source, FiniteGroup target, std::vector<Elem> map);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  std::span<const Elem> map() const { return map_; }
  Elem operator()(Elem x) const { return map_[x]; }
  bool surjective() const { return surjective_; }

  // First (x, g) with f(xg) != f(x)f(g), g a source generator. Checking
  // generators is exact: f(x s1...sm) then unwinds to f(x)f(s1)...f(sm).
  std::optional<std::pair<Elem, Elem>> law_violation() const;

  ElementSet image(const ElementSet& s) const;
  Subgroup image(const Subgroup& h) const;
  Subgroup preimage(const Subgroup& k) const;
  Subgroup kernel() const;
  // next ∘ this
  Homomorphism then(const Homomorphism& next) const;

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Elem> map_;
  bool surjective_ = false;
};

}  // namespace atlas
