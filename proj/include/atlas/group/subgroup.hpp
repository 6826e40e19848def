#pragma once

#include <compare>
#include <span>
#include <vector>

#include "atlas/element_set.hpp"
#include "atlas/group/finite_group.hpp"

namespace atlas {

class Subgroup {
 public:
  Subgroup() = default;

  // Caller guarantees members form a subgroup generated by gens.
  static Subgroup trusted(FiniteGroup parent, ElementSet members, std::vector<Elem> gens);
  // Checks the subgroup axioms (throws InvalidGroup) and picks generators.
  static Subgroup from_members(const FiniteGroup& parent, ElementSet members);
  static Subgroup whole(const FiniteGroup& parent);
  static Subgroup trivial(const FiniteGroup& parent);

  const FiniteGroup& parent() const { return parent_; }
  const ElementSet& members() const { return members_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t index() const { return parent_.order() / order_; }
  bool contains(Elem e) const { return members_.test(e); }
  std::span<const Elem> generators() const { return gens_; }

  bool is_trivial() const { return order_ == 1; }
  bool is_whole() const { return order_ == parent_.order(); }
  bool is_subgroup_of(const Subgroup& other) const { return members_.is_subset_of(other.members_); }

  bool operator==(const Subgroup& other) const { return members_ == other.members_; }
  // Canonical order: by order, then lexicographic bitset.
  std::strong_ordering operator<=>(const Subgroup& other) const {
    if (order_ != other.order_) return order_ <=> other.order_;
    return members_.lex_compare(other.members_);
  }

 private:
  FiniteGroup parent_;
  ElementSet members_;
  std::uint32_t order_ = 0;
  std::vector<Elem> gens_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const { return s.members().hash(); }
};

// Smallest subgroup containing seed.
Subgroup closure(const FiniteGroup& g, std::span<const Elem> seed);
// Smallest subgroup containing base and extra.
Subgroup closure(const Subgroup& base, std::span<const Elem> extra);
// Closure of an arbitrary element set.
Subgroup closure_of_set(const FiniteGroup& g, const ElementSet& seed);

// Every subgroup exactly once, in canonical order. CapExceeded above the cap.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

}  // namespace atlas
