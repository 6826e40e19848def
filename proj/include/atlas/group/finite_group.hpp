#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "atlas/element_set.hpp"

namespace atlas {

namespace detail {
struct GroupData;
}

// A finite group on elements 0..order-1. Immutable and cheap to copy: copies
// share one table. Two representations exist behind the same interface: an
// explicit Cayley table (order <= Limits::order_cap) and an implicit direct
// product of two groups, used for coprime product towers whose order exceeds
// the table cap. Product elements are laid out row-major, i = i1*|G2| + i2.
class FiniteGroup {
 public:
  using MulFn = std::function<Elem(Elem, Elem)>;

  FiniteGroup();

  // Validates the table: in-range entries, Latin square, identity, inverses,
  // associativity (exhaustive up to Limits::exhaustive_assoc_limit, sampled
  // above) and that the generators generate.
  static FiniteGroup from_table(std::uint32_t order, std::vector<std::uint16_t> table,
                                std::vector<Elem> generators, std::vector<std::string> labels = {});
  static FiniteGroup from_function(std::uint32_t order, const MulFn& mul, std::vector<Elem> generators,
                                   std::vector<std::string> labels = {});
  // No table; multiplication is componentwise. Order must fit product_cap.
  static FiniteGroup implicit_product(const FiniteGroup& left, const FiniteGroup& right);

  std::uint32_t order() const;
  Elem identity() const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  // g^-1 a g
  Elem conj(Elem a, Elem g) const { return mul(mul(inv(g), a), g); }
  // a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::uint32_t element_order(Elem a) const;

  std::span<const Elem> generators() const;
  std::string label(Elem e) const;
  bool has_labels() const;
  // Distinct primes dividing the order, ascending.
  std::span<const std::uint64_t> primes() const;

  bool is_implicit_product() const;
  bool has_table() const;
  const FiniteGroup& left_factor() const;
  const FiniteGroup& right_factor() const;

  bool is_abelian() const;
  // Same underlying object (not isomorphism).
  bool same_as(const FiniteGroup& other) const { return data_ == other.data_; }

  ElementSet all_elements() const { return ElementSet::full(order()); }
  ElementSet empty_set() const { return ElementSet(order()); }

 private:
  explicit FiniteGroup(std::shared_ptr<const detail::GroupData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::GroupData> data_;
};

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
bool is_prime(std::uint64_t n);

// Builds a group by closing generator codes under a multiplication on opaque
// 64-bit codes. Elements are numbered identity first, then by ascending code,
// so the numbering is deterministic. `codes_out` receives the code of each
// element index.
FiniteGroup group_from_generators(const std::vector<std::uint64_t>& generator_codes, std::uint64_t identity_code,
                                  const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul,
                                  std::vector<std::uint64_t>* codes_out = nullptr,
                                  const std::function<std::string(std::uint64_t)>& label = {});

}  // namespace atlas
