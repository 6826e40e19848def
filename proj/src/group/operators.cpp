#include "atlas/group/operators.hpp"

#include <algorithm>

#include "atlas/error.hpp"

namespace atlas {

namespace {

void same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_as(b.parent())) fail(ErrorCode::InvalidGroup, "subgroups live in different groups");
}

Subgroup from_subgroup_set(const FiniteGroup& g, const ElementSet& s) { return closure_of_set(g, s); }

}  // namespace

bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  for (Elem x : g.generators())
    for (Elem s : h.generators())
      if (!h.contains(g.conj(s, x))) return false;
  return true;
}

Subgroup normal_closure(const Subgroup& ambient, const ElementSet& seed) {
  const FiniteGroup& g = ambient.parent();
  Subgroup k = closure_of_set(g, seed);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Elem> missing;
    for (Elem a : ambient.generators())
      for (Elem s : k.generators()) {
        const Elem c = g.conj(s, a);
        if (!k.contains(c)) missing.push_back(c);
      }
    if (!missing.empty()) {
      k = closure(k, missing);
      grew = true;
    }
  }
  return k;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  same_parent(a, b);
  return from_subgroup_set(a.parent(), a.members() & b.members());
}

Subgroup conjugate(const Subgroup& h, Elem x) {
  const FiniteGroup& g = h.parent();
  ElementSet s(g.order());
  h.members().for_each([&](Elem y) { s.set(g.conj(y, x)); });
  std::vector<Elem> gens;
  for (Elem y : h.generators()) gens.push_back(g.conj(y, x));
  return Subgroup::trusted(g, std::move(s), std::move(gens));
}

Subgroup normalizer(const Subgroup& h) {
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
  return from_subgroup_set(g, n);
}

Subgroup centralizer_in(const Subgroup& ambient, const Subgroup& h) {
  same_parent(ambient, h);
  const FiniteGroup& g = ambient.parent();
  ElementSet c(g.order());
  ambient.members().for_each([&](Elem x) {
    for (Elem s : h.generators())
      if (g.mul(x, s) != g.mul(s, x)) return;
    c.set(x);
  });
  return from_subgroup_set(g, c);
}

Subgroup centralizer(const Subgroup& h) { return centralizer_in(Subgroup::whole(h.parent()), h); }

Subgroup center(const FiniteGroup& g) {
  const Subgroup w = Subgroup::whole(g);
  return centralizer_in(w, w);
}

Subgroup center_of(const Subgroup& h) { return centralizer_in(h, h); }

Subgroup core(const Subgroup& h) {
  // Iterate K <- K ∩ K^x over generators x; the fixed point is normal and
  // contains every normal subgroup of G inside H.
  const FiniteGroup& g = h.parent();
  Subgroup k = h;
  for (bool shrank = true; shrank;) {
    shrank = false;
    for (Elem x : g.generators()) {
      const Subgroup kx = conjugate(k, x);
      if (!(kx == k)) {
        k = intersection(k, kx);
        shrank = true;
      }
    }
  }
  return k;
}

Subgroup product_set(const Subgroup& h, const Subgroup& n) {
  same_parent(h, n);
  if (!is_normal(n)) fail(ErrorCode::NotNormal, "product_set needs N normal in G");
  return closure(n, h.generators());
}

Subgroup derived_subgroup(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  ElementSet seed(g.order());
  seed.set(g.identity());
  for (Elem a : h.generators())
    for (Elem b : h.generators()) seed.set(g.commutator(a, b));
  return normal_closure(h, seed);
}

Subgroup commutator_subgroup(const FiniteGroup& g) { return derived_subgroup(Subgroup::whole(g)); }

Subgroup commutator_of(const Subgroup& a, const Subgroup& b) {
  same_parent(a, b);
  const FiniteGroup& g = a.parent();
  ElementSet seed(g.order());
  seed.set(g.identity());
  for (Elem x : a.generators())
    for (Elem y : b.generators()) seed.set(g.commutator(x, y));
  return normal_closure(Subgroup::whole(g), seed);
}

Subgroup power_subgroup(const Subgroup& h, std::uint64_t p) {
  const FiniteGroup& g = h.parent();
  ElementSet seed(g.order());
  h.members().for_each([&](Elem x) { seed.set(g.pow(x, p)); });
  return closure_of_set(g, seed);
}

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{Subgroup::whole(g)};
  for (;;) {
    Subgroup next = derived_subgroup(series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_solvable(const FiniteGroup& g) { return derived_series(g).back().is_trivial(); }

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  const Subgroup w = Subgroup::whole(g);
  std::vector<Subgroup> series{w};
  for (;;) {
    Subgroup next = commutator_of(series.back(), w);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_nilpotent(const FiniteGroup& g) { return lower_central_series(g).back().is_trivial(); }

int nilpotency_class(const FiniteGroup& g) {
  const auto s = lower_central_series(g);
  if (!s.back().is_trivial()) return -1;
  return static_cast<int>(s.size()) - 1;
}

std::vector<Subgroup> maximal_subgroups(const std::vector<Subgroup>& lattice) {
  // Any proper subgroup lies in some maximal one of larger order, so scanning
  // by decreasing order only needs the maximals already found.
  std::vector<Subgroup> maxima;
  if (lattice.empty()) return maxima;
  const std::uint32_t n = lattice.front().parent().order();
  for (auto it = lattice.rbegin(); it != lattice.rend(); ++it) {
    if (it->order() == n) continue;
    const bool covered = std::any_of(maxima.begin(), maxima.end(),
                                     [&](const Subgroup& m) { return it->is_subgroup_of(m); });
    if (!covered) maxima.push_back(*it);
  }
  std::sort(maxima.begin(), maxima.end());
  return maxima;
}

std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g) { return maximal_subgroups(all_subgroups(g)); }

Subgroup frattini(const std::vector<Subgroup>& lattice) {
  const auto maxima = maximal_subgroups(lattice);
  if (maxima.empty()) return lattice.front();
  ElementSet s = maxima.front().members();
  for (const auto& m : maxima) s &= m.members();
  return from_subgroup_set(maxima.front().parent(), s);
}

Subgroup frattini(const FiniteGroup& g) {
  if (g.order() == 1) return Subgroup::trivial(g);
  return frattini(all_subgroups(g));
}

}  // namespace atlas
