#include "atlas/group/subgroup.hpp"

#include <algorithm>

#include "atlas/error.hpp"

namespace atlas {

namespace {

// Closes `set` (already a subgroup generated by `gens`) under the new
// generators in `extra`. Generators that add nothing are dropped.
void extend(const FiniteGroup& g, ElementSet& set, std::vector<Elem>& gens, std::span<const Elem> extra) {
  std::vector<Elem> queue;
  for (Elem x : extra) {
    if (set.test(x)) continue;
    gens.push_back(x);
    queue = set.members();
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Elem a = queue[head];
      for (Elem s : gens) {
        const Elem b = g.mul(a, s);
        if (!set.test(b)) {
          set.set(b);
          queue.push_back(b);
        }
      }
    }
  }
}

}  // namespace

Subgroup Subgroup::trusted(FiniteGroup parent, ElementSet members, std::vector<Elem> gens) {
  Subgroup s;
  s.order_ = static_cast<std::uint32_t>(members.count());
  s.parent_ = std::move(parent);
  s.members_ = std::move(members);
  s.gens_ = std::move(gens);
  return s;
}

Subgroup Subgroup::from_members(const FiniteGroup& parent, ElementSet members) {
  if (members.universe() != parent.order()) fail(ErrorCode::InvalidGroup, "bitset universe does not match group");
  if (!members.test(parent.identity())) fail(ErrorCode::InvalidGroup, "subset lacks the identity");
  // The closure contains the set; equality holds exactly when the set is closed.
  const Subgroup c = closure_of_set(parent, members);
  if (!(c.members() == members)) fail(ErrorCode::InvalidGroup, "subset is not closed under multiplication");
  return c;
}

Subgroup Subgroup::whole(const FiniteGroup& parent) {
  const auto gens = parent.generators();
  return trusted(parent, parent.all_elements(), std::vector<Elem>(gens.begin(), gens.end()));
}

Subgroup Subgroup::trivial(const FiniteGroup& parent) {
  ElementSet s(parent.order());
  s.set(parent.identity());
  return trusted(parent, std::move(s), {});
}

Subgroup closure(const FiniteGroup& g, std::span<const Elem> seed) {
  ElementSet set(g.order());
  set.set(g.identity());
  std::vector<Elem> gens;
  extend(g, set, gens, seed);
  return Subgroup::trusted(g, std::move(set), std::move(gens));
}

Subgroup closure(const Subgroup& base, std::span<const Elem> extra) {
  ElementSet set = base.members();
  std::vector<Elem> gens(base.generators().begin(), base.generators().end());
  extend(base.parent(), set, gens, extra);
  return Subgroup::trusted(base.parent(), std::move(set), std::move(gens));
}

Subgroup closure_of_set(const FiniteGroup& g, const ElementSet& seed) {
  const auto m = seed.members();
  return closure(g, m);
}

}  // namespace atlas
