#pragma once

#include <span>
#include <vector>

#include "atlas/group/subgroup.hpp"

namespace atlas {

bool is_normal(const Subgroup& h);
// Normal closure of seed inside ambient.
Subgroup normal_closure(const Subgroup& ambient, const ElementSet& seed);

Subgroup intersection(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Subgroup& h, Elem g);
Subgroup normalizer(const Subgroup& h);
Subgroup centralizer(const Subgroup& h);
// Centralizer of h inside ambient (both in the same parent).
Subgroup centralizer_in(const Subgroup& ambient, const Subgroup& h);
Subgroup center(const FiniteGroup& g);
Subgroup center_of(const Subgroup& h);
Subgroup core(const Subgroup& h);
// HN. NotNormal unless n is normal in the parent.
Subgroup product_set(const Subgroup& h, const Subgroup& n);

Subgroup commutator_subgroup(const FiniteGroup& g);
// [h,h] as a subgroup of h's parent.
Subgroup derived_subgroup(const Subgroup& h);
// [a,b] for normal subgroups a, b of the parent.
Subgroup commutator_of(const Subgroup& a, const Subgroup& b);
// Closure of {x^p : x in h}.
Subgroup power_subgroup(const Subgroup& h, std::uint64_t p);

std::vector<Subgroup> derived_series(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);
// Lower central series G = g_1 > g_2 > ... until stable.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g);
// Length of the lower central series down to 1; -1 when not nilpotent.
int nilpotency_class(const FiniteGroup& g);

std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g);
Subgroup frattini(const FiniteGroup& g);
// Same, reusing an already enumerated lattice (canonical order, nonempty).
std::vector<Subgroup> maximal_subgroups(const std::vector<Subgroup>& lattice);
Subgroup frattini(const std::vector<Subgroup>& lattice);

}  // namespace atlas
