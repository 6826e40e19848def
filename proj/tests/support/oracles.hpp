#pragma once

// Brute-force reference implementations. Deliberately naive: they use only
// FiniteGroup::mul/inv and plain containers so they share no code path with
// the library operators they check.

#include <algorithm>
#include <set>
#include <vector>

#include "atlas/group/finite_group.hpp"

namespace oracle {

using atlas::Elem;
using atlas::FiniteGroup;
using Set = std::set<Elem>;

inline Set close(const FiniteGroup& g, Set s) {
  s.insert(g.identity());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Elem> cur(s.begin(), s.end());
    for (Elem a : cur)
      for (Elem b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return s;
}

inline bool is_closed(const FiniteGroup& g, const Set& s) {
  if (!s.count(g.identity())) return false;
  for (Elem a : s)
    for (Elem b : s)
      if (!s.count(g.mul(a, b))) return false;
  return true;
}

// Every subset containing the identity, tested for closure. Order <= 16.
inline std::set<Set> subgroups_by_subsets(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  std::set<Set> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    if (!((mask >> g.identity()) & 1u)) continue;
    Set s;
    for (Elem i = 0; i < n; ++i)
      if ((mask >> i) & 1u) s.insert(i);
    if (is_closed(g, s)) out.insert(s);
  }
  return out;
}

// Saturate {1} under S -> <S, x>. Reaches every subgroup of any finite group.
inline std::set<Set> subgroups_by_saturation(const FiniteGroup& g) {
  std::set<Set> out{close(g, {})};
  std::vector<Set> frontier(out.begin(), out.end());
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const auto& s : frontier)
      for (Elem x = 0; x < g.order(); ++x) {
        if (s.count(x)) continue;
        Set t = s;
        t.insert(x);
        t = close(g, t);
        if (out.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return out;
}

inline Set conjugate(const FiniteGroup& g, const Set& h, Elem x) {
  Set out;
  for (Elem y : h) out.insert(g.mul(g.mul(g.inv(x), y), x));
  return out;
}

inline Set center(const FiniteGroup& g) {
  Set out;
  for (Elem a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (Elem b = 0; b < g.order() && ok; ++b) ok = g.mul(a, b) == g.mul(b, a);
    if (ok) out.insert(a);
  }
  return out;
}

inline Set normalizer(const FiniteGroup& g, const Set& h) {
  Set out;
  for (Elem x = 0; x < g.order(); ++x)
    if (conjugate(g, h, x) == h) out.insert(x);
  return out;
}

inline Set centralizer(const FiniteGroup& g, const Set& h) {
  Set out;
  for (Elem x = 0; x < g.order(); ++x)
    if (std::all_of(h.begin(), h.end(), [&](Elem y) { return g.mul(x, y) == g.mul(y, x); })) out.insert(x);
  return out;
}

inline Set core(const FiniteGroup& g, const Set& h) {
  Set out = h;
  for (Elem x = 0; x < g.order(); ++x) {
    const Set c = conjugate(g, h, x);
    Set keep;
    std::set_intersection(out.begin(), out.end(), c.begin(), c.end(), std::inserter(keep, keep.end()));
    out = keep;
  }
  return out;
}

inline Set commutator_subgroup(const FiniteGroup& g) {
  Set s;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) s.insert(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  return close(g, s);
}

inline bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Intersection of the maximal proper subgroups, maximality by pairwise inclusion.
inline Set frattini(const FiniteGroup& g) {
  const auto subs = subgroups_by_saturation(g);
  Set out;
  for (Elem i = 0; i < g.order(); ++i) out.insert(i);
  bool any = false;
  for (const auto& m : subs) {
    if (m.size() == g.order()) continue;
    bool maximal = true;
    for (const auto& k : subs)
      if (k.size() > m.size() && k.size() < g.order() && subset(m, k)) maximal = false;
    if (!maximal) continue;
    any = true;
    Set keep;
    std::set_intersection(out.begin(), out.end(), m.begin(), m.end(), std::inserter(keep, keep.end()));
    out = keep;
  }
  return any ? out : Set{g.identity()};
}

inline bool is_homomorphism(const FiniteGroup& s, const FiniteGroup& t, const std::vector<Elem>& f) {
  for (Elem a = 0; a < s.order(); ++a)
    for (Elem b = 0; b < s.order(); ++b)
      if (f[s.mul(a, b)] != t.mul(f[a], f[b])) return false;
  return true;
}

inline bool isomorphic_order_profile(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  std::multiset<std::uint32_t> oa, ob;
  for (Elem x = 0; x < a.order(); ++x) oa.insert(a.element_order(x));
  for (Elem x = 0; x < b.order(); ++x) ob.insert(b.element_order(x));
  return oa == ob;
}

}  // namespace oracle
