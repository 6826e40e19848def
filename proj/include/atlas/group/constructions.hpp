#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "atlas/group/homomorphism.hpp"

namespace atlas {

FiniteGroup cyclic(std::uint32_t n);
// Z/m1 x Z/m2 x ...; element index is mixed radix with the last factor fastest.
FiniteGroup abelian(const std::vector<std::uint32_t>& moduli);
// Dihedral group of order 2n. Index k < n is r^k, index n + k is r^k s.
FiniteGroup dihedral(std::uint32_t n);
// Order 8; indices 0..7 are 1, i, j, k, -1, -i, -j, -k.
FiniteGroup quaternion8();
// One-line images on {0..degree-1}, degree <= 16. The product gh applies g first.
FiniteGroup permutation_group(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& generators);
// Square integer matrices reduced mod `modulus`, multiplied as matrices.
FiniteGroup matrix_group(std::uint32_t modulus, const std::vector<std::vector<std::vector<std::int64_t>>>& generators);

// Canonical coset numbering: cosets are numbered by their smallest element.
std::pair<FiniteGroup, Homomorphism> quotient(const Subgroup& n);

// Explicit table, index i1*|G2| + i2. CapExceeded above the order cap.
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);
// Table product when it fits the cap, implicit product otherwise.
FiniteGroup product_any_size(const FiniteGroup& g1, const FiniteGroup& g2);
inline Elem pair_index(const FiniteGroup& g2, Elem a, Elem b) { return a * g2.order() + b; }

struct GoursatQuintuple {
  Subgroup proj_left;
  Subgroup ker_left;
  Subgroup proj_right;
  Subgroup ker_right;
  // Coset of a (rep = smallest element of a*ker_left) -> coset rep on the right.
  std::vector<std::pair<Elem, Elem>> iso;
};

// H must live in a product of g1 and g2 (index i1*|G2| + i2).
GoursatQuintuple goursat(const FiniteGroup& g1, const FiniteGroup& g2, const Subgroup& h);
// {(a,b) : a in proj_left, b in proj_right, iso(aK1) = bK2} inside `product`.
Subgroup goursat_reconstruct(const GoursatQuintuple& q, const FiniteGroup& product);

}  // namespace atlas
