#include "atlas/space/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "atlas/error.hpp"
#include "atlas/parallel.hpp"

namespace atlas {

namespace {

bool coprime_factors(const Tower& t) {
  if (t.factors().size() < 2) return false;
  std::set<std::uint64_t> seen;
  for (const auto& f : t.factors())
    for (auto p : f.meta().primes)
      if (!seen.insert(p).second) return false;
  return true;
}

// Mixed-radix key of a factor tuple.
std::uint64_t tuple_key(std::span<const std::uint32_t> tuple, const std::vector<std::size_t>& radix) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) key = key * radix[i] + tuple[i];
  return key;
}

}  // namespace

const LatticeTower::Level& LatticeTower::lvl(int k) const {
  if (k < 1 || k > depth()) fail(ErrorCode::OutOfRange, "lattice level " + std::to_string(k) + " outside 1.." + std::to_string(depth()));
  return levels_[static_cast<std::size_t>(k - 1)];
}

LatticeTower::Level& LatticeTower::lvl(int k) {
  return const_cast<Level&>(static_cast<const LatticeTower&>(*this).lvl(k));
}

LatticeTower LatticeTower::build(const Tower& t, LatticeRoute route) {
  LatticeTower lt;
  lt.tower_ = t;
  const int depth = t.depth();
  lt.levels_.resize(static_cast<std::size_t>(depth));
  const bool coprime = coprime_factors(t);
  if (route == LatticeRoute::Factor && !coprime)
    fail(ErrorCode::WrongShape, "factor route needs a product of towers with disjoint primes");
  lt.factorized_ = route == LatticeRoute::Factor || (route == LatticeRoute::Auto && coprime);

  if (!lt.factorized_) {
    parallel_for(static_cast<std::size_t>(depth), [&](std::size_t k) { lt.levels_[k].nodes = all_subgroups(t.level(static_cast<int>(k) + 1)); });
  } else {
    for (const auto& f : t.factors()) lt.factor_lattices_.push_back(build(f, LatticeRoute::Auto));
    parallel_for(static_cast<std::size_t>(depth), [&](std::size_t k0) {
      const int k = static_cast<int>(k0) + 1;
      const FiniteGroup& g = t.level(k);
      const std::size_t nf = lt.factor_lattices_.size();
      std::vector<std::size_t> radix(nf);
      std::size_t total = 1;
      for (std::size_t f = 0; f < nf; ++f) total *= radix[f] = lt.factor_lattices_[f].count(k);

      std::vector<std::pair<Subgroup, std::vector<std::uint32_t>>> items;
      items.reserve(total);
      std::vector<std::uint32_t> tuple(nf, 0);
      for (std::size_t n = 0; n < total; ++n) {
        std::size_t rest = n;
        for (std::size_t f = nf; f-- > 0;) {
          tuple[f] = static_cast<std::uint32_t>(rest % radix[f]);
          rest /= radix[f];
        }
        // members and generators embedded in the row-major product layout
        std::vector<Elem> members{0};
        std::vector<std::vector<Elem>> gens;
        for (std::size_t f = 0; f < nf; ++f) {
          const FiniteGroup& gf = t.factors()[f].level(k);
          const Subgroup& h = lt.factor_lattices_[f].node(k, tuple[f]);
          std::vector<Elem> next;
          next.reserve(members.size() * h.order());
          const auto hm = h.members().members();
          for (Elem m : members)
            for (Elem y : hm) next.push_back(m * gf.order() + y);
          members = std::move(next);
          for (auto& gv : gens)
            for (auto& x : gv) x = x * gf.order() + gf.identity();
          std::vector<Elem> mine;
          for (Elem y : h.generators()) mine.push_back(y);
          // earlier factors sit at their identities
          Elem prefix = 0;
          for (std::size_t e = 0; e < f; ++e) prefix = prefix * t.factors()[e].level(k).order() + t.factors()[e].level(k).identity();
          for (auto& x : mine) x = prefix * gf.order() + x;
          gens.push_back(std::move(mine));
        }
        std::vector<Elem> flat;
        for (auto& gv : gens) flat.insert(flat.end(), gv.begin(), gv.end());
        items.emplace_back(Subgroup::trusted(g, ElementSet::of(g.order(), members), std::move(flat)), tuple);
      }
      std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      auto& level = lt.levels_[k0];
      for (auto& [s, tu] : items) {
        level.nodes.push_back(std::move(s));
        level.tuples.push_back(std::move(tu));
      }
    });
  }

  for (auto& level : lt.levels_) {
    level.lookup.reserve(level.nodes.size());
    for (std::uint32_t i = 0; i < level.nodes.size(); ++i) level.lookup.emplace(level.nodes[i].members(), i);
    level.children.assign(level.nodes.size(), {});
    level.full_preimage.assign(level.nodes.size(), 0);
  }

  // parents and full preimages across each map
  parallel_for(depth > 0 ? static_cast<std::size_t>(depth - 1) : 0u, [&](std::size_t k0) {
    const int k = static_cast<int>(k0) + 1;  // map from level k+1 to level k
    auto& low = lt.levels_[k0];
    auto& up = lt.levels_[k0 + 1];
    up.parent.assign(up.nodes.size(), 0);
    if (lt.factorized_) {
      const std::size_t nf = lt.factor_lattices_.size();
      std::vector<std::size_t> radix(nf);
      for (std::size_t f = 0; f < nf; ++f) radix[f] = lt.factor_lattices_[f].count(k);
      std::unordered_map<std::uint64_t, std::uint32_t> by_key;
      for (std::uint32_t i = 0; i < low.tuples.size(); ++i) by_key.emplace(tuple_key(low.tuples[i], radix), i);
      std::vector<std::uint32_t> tu(nf);
      for (std::uint32_t i = 0; i < up.nodes.size(); ++i) {
        for (std::size_t f = 0; f < nf; ++f) tu[f] = lt.factor_lattices_[f].parent(k + 1, up.tuples[i][f]);
        up.parent[i] = by_key.at(tuple_key(tu, radix));
      }
      std::vector<std::size_t> up_radix(nf);
      for (std::size_t f = 0; f < nf; ++f) up_radix[f] = lt.factor_lattices_[f].count(k + 1);
      std::unordered_map<std::uint64_t, std::uint32_t> up_key;
      for (std::uint32_t i = 0; i < up.tuples.size(); ++i) up_key.emplace(tuple_key(up.tuples[i], up_radix), i);
      for (std::uint32_t i = 0; i < low.nodes.size(); ++i) {
        for (std::size_t f = 0; f < nf; ++f) tu[f] = lt.factor_lattices_[f].full_preimage_child(k, low.tuples[i][f]);
        low.full_preimage[i] = up_key.at(tuple_key(tu, up_radix));
      }
    } else {
      const Homomorphism& pi = lt.tower_.map(k);
      for (std::uint32_t i = 0; i < up.nodes.size(); ++i) up.parent[i] = low.lookup.at(pi.image(up.nodes[i].members()));
      for (std::uint32_t i = 0; i < low.nodes.size(); ++i) {
        ElementSet pre(pi.source().order());
        const Subgroup& h = low.nodes[i];
        for (Elem x = 0; x < pi.source().order(); ++x)
          if (h.contains(pi(x))) pre.set(x);
        low.full_preimage[i] = up.lookup.at(pre);
      }
    }
  });
  for (int k = 1; k < depth; ++k) {
    auto& low = lt.levels_[static_cast<std::size_t>(k - 1)];
    const auto& up = lt.levels_[static_cast<std::size_t>(k)];
    for (std::uint32_t i = 0; i < up.nodes.size(); ++i) low.children[up.parent[i]].push_back(i);
  }
  return lt;
}

std::vector<std::size_t> LatticeTower::counts() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels_) out.push_back(l.nodes.size());
  return out;
}

std::uint32_t LatticeTower::parent(int k, std::uint32_t i) const {
  if (k < 2) fail(ErrorCode::OutOfRange, "level-1 nodes have no parent");
  return lvl(k).parent.at(i);
}

std::span<const std::uint32_t> LatticeTower::children(int k, std::uint32_t i) const {
  if (k >= depth()) return {};
  return lvl(k).children.at(i);
}

std::uint32_t LatticeTower::full_preimage_child(int k, std::uint32_t i) const {
  if (k >= depth()) fail(ErrorCode::OutOfRange, "top-level nodes have no children");
  return lvl(k).full_preimage.at(i);
}

std::optional<std::uint32_t> LatticeTower::find(int k, const ElementSet& members) const {
  const auto& l = lvl(k);
  auto it = l.lookup.find(members);
  if (it == l.lookup.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> LatticeTower::factor_tuple(int k, std::uint32_t i) const {
  if (!factorized_) fail(ErrorCode::WrongShape, "lattice is not factorized");
  return lvl(k).tuples.at(i);
}

Thread LatticeTower::full_preimage_thread(int k, std::uint32_t i) const {
  Thread th;
  th.start_level = k;
  for (int j = k;; ++j) {
    th.path.push_back(i);
    th.index_seq.push_back(group_index(j, i));
    if (j == depth()) break;
    i = full_preimage_child(j, i);
  }
  return th;
}

std::uint32_t LatticeTower::ancestor(int k, std::uint32_t i, int j) const {
  if (j < 1 || j > k) fail(ErrorCode::OutOfRange, "ancestor level out of range");
  for (; k > j; --k) i = parent(k, i);
  return i;
}

void LatticeTower::drop_child_edge_for_testing(int k, std::uint32_t i, std::uint32_t child) {
  auto& c = lvl(k).children.at(i);
  c.erase(std::remove(c.begin(), c.end(), child), c.end());
}

std::vector<std::uint32_t> basic_open_fiber(const LatticeTower& lt, int k, std::uint32_t i, int j) {
  if (k < 1 || j < 0 || k + j > lt.depth() || i >= lt.count(k))
    fail(ErrorCode::OutOfRange, "fiber request outside the lattice tower");
  std::vector<std::uint32_t> frontier{i};
  for (int step = 0; step < j; ++step) {
    std::vector<std::uint32_t> next;
    for (auto x : frontier) {
      const auto c = lt.children(k + step, x);
      next.insert(next.end(), c.begin(), c.end());
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace atlas
