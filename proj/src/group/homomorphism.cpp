#include "atlas/group/homomorphism.hpp"

#include "atlas/error.hpp"

namespace atlas {

Homomorphism Homomorphism::unchecked(FiniteGroup source, FiniteGroup target, std::vector<Elem> map) {
  if (map.size() != source.order()) fail(ErrorCode::InvalidGroup, "map must cover every source element");
  Homomorphism h;
  ElementSet img(target.order());
  for (Elem y : map) {
    if (y >= target.order()) fail(ErrorCode::InvalidGroup, "map value out of range");
    img.set(y);
  }
  h.surjective_ = img.count() == target.order();
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.map_ = std::move(map);
  return h;
}

Homomorphism Homomorphism::make(FiniteGroup source, FiniteGroup target, std::vector<Elem> map) {
  Homomorphism h = unchecked(std::move(source), std::move(target), std::move(map));
  if (auto bad = h.law_violation())
    fail(ErrorCode::InvalidGroup, "homomorphism law fails at x=" + std::to_string(bad->first) +
                                      ", g=" + std::to_string(bad->second));
  return h;
}

Homomorphism Homomorphism::from_generator_images(FiniteGroup source, FiniteGroup target,
                                                 std::span<const Elem> images) {
  const auto gens = source.generators();
  if (images.size() != gens.size()) fail(ErrorCode::InvalidGroup, "need one image per generator");
  const std::uint32_t n = source.order();
  std::vector<Elem> map(n, target.order());
  map[source.identity()] = target.identity();
  std::vector<Elem> queue{source.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elem y = source.mul(x, gens[i]);
      if (map[y] == target.order()) {
        map[y] = target.mul(map[x], images[i]);
        queue.push_back(y);
      }
    }
  }
  return make(std::move(source), std::move(target), std::move(map));
}

std::optional<std::pair<Elem, Elem>> Homomorphism::law_violation() const {
  if (map_[source_.identity()] != target_.identity()) return std::pair{source_.identity(), source_.identity()};
  for (Elem g : source_.generators()) {
    const Elem fg = map_[g];
    for (Elem x = 0; x < source_.order(); ++x)
      if (map_[source_.mul(x, g)] != target_.mul(map_[x], fg)) return std::pair{x, g};
  }
  return std::nullopt;
}

ElementSet Homomorphism::image(const ElementSet& s) const {
  ElementSet out(target_.order());
  s.for_each([&](Elem x) { out.set(map_[x]); });
  return out;
}

Subgroup Homomorphism::image(const Subgroup& h) const {
  std::vector<Elem> gens;
  for (Elem g : h.generators()) gens.push_back(map_[g]);
  return Subgroup::trusted(target_, image(h.members()), std::move(gens));
}

Subgroup Homomorphism::preimage(const Subgroup& k) const {
  ElementSet s(source_.order());
  for (Elem x = 0; x < source_.order(); ++x)
    if (k.contains(map_[x])) s.set(x);
  return closure_of_set(source_, s);
}

Subgroup Homomorphism::kernel() const { return preimage(Subgroup::trivial(target_)); }

Homomorphism Homomorphism::then(const Homomorphism& next) const {
  if (!target_.same_as(next.source_)) fail(ErrorCode::InvalidGroup, "composition needs matching groups");
  std::vector<Elem> m(map_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = next.map_[map_[i]];
  return unchecked(source_, next.target_, std::move(m));
}

}  // namespace atlas
