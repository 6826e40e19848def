#include <algorithm>
#include <map>
#include <unordered_set>

#include "atlas/config.hpp"
#include "atlas/error.hpp"
#include "atlas/group/operators.hpp"
#include "atlas/group/subgroup.hpp"
#include "atlas/parallel.hpp"

namespace atlas {

namespace {

ElementSet normalizer_set(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  ElementSet n(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem s : h.generators())
      if (!h.contains(g.conj(s, x))) {
        ok = false;
        break;
      }
    if (ok) n.set(x);
  }
  return n;
}

// Every K with H normal in K and K/H of prime order. In a solvable group each
// subgroup sits on top of such a chain, so these extensions reach all of them.
std::vector<Subgroup> cyclic_extensions(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto hm = h.members().members();
  ElementSet todo = normalizer_set(h);
  todo.subtract(h.members());
  std::vector<Subgroup> out;
  for (Elem x = todo.first(); x < g.order(); x = todo.first()) {
    std::vector<Elem> powers{x};
    while (!h.contains(powers.back())) powers.push_back(g.mul(powers.back(), x));
    powers.pop_back();  // x^k lies in H
    const std::size_t k = powers.size() + 1;
    const bool prime = is_prime(k);
    ElementSet k_set = h.members();
    // g^i H for 1 <= i < k; for prime k they all generate the same K
    for (std::size_t i = 0; i < powers.size(); ++i) {
      if (!prime && i > 0) break;
      for (Elem y : hm) {
        const Elem z = g.mul(powers[i], y);
        todo.reset(z);
        k_set.set(z);
      }
    }
    if (!prime) continue;
    std::vector<Elem> gens(h.generators().begin(), h.generators().end());
    gens.push_back(x);
    out.push_back(Subgroup::trusted(g, std::move(k_set), std::move(gens)));
  }
  return out;
}

// <H, x> for one x per right coset Hx. Works for any group: a subgroup K is
// generated by any maximal subgroup of K plus one element outside it.
std::vector<Subgroup> generic_extensions(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto hm = h.members().members();
  ElementSet todo = g.all_elements();
  todo.subtract(h.members());
  std::vector<Subgroup> out;
  for (Elem x = todo.first(); x < g.order(); x = todo.first()) {
    for (Elem y : hm) todo.reset(g.mul(y, x));
    const Elem one[] = {x};
    out.push_back(closure(h, one));
  }
  return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  if (!g.has_table() || g.order() > limits().order_cap)
    fail(ErrorCode::CapExceeded, "subgroup enumeration needs order <= " + std::to_string(limits().order_cap) +
                                     ", got " + std::to_string(g.order()));
  const bool solvable = is_solvable(g);

  std::vector<Subgroup> found{Subgroup::trivial(g)};
  std::unordered_set<ElementSet, ElementSetHash> seen{found.front().members()};
  // Extensions strictly increase the order, so processing by order is a BFS
  // in which every layer is complete before it is extended.
  std::map<std::uint32_t, std::vector<std::size_t>> pending{{1u, {0}}};
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const auto& layer = node.mapped();
    std::vector<std::vector<Subgroup>> ext(layer.size());
    parallel_for(layer.size(), [&](std::size_t i) {
      const Subgroup& h = found[layer[i]];
      ext[i] = solvable ? cyclic_extensions(h) : generic_extensions(h);
    });
    for (auto& list : ext)
      for (auto& k : list) {
        if (!seen.insert(k.members()).second) continue;
        pending[k.order()].push_back(found.size());
        found.push_back(std::move(k));
      }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace atlas
