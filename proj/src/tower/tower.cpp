#include "atlas/tower/tower.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "atlas/error.hpp"

namespace atlas {

Tower::Tower(TowerMeta meta, std::vector<FiniteGroup> levels, std::vector<Homomorphism> maps)
    : meta_(std::move(meta)), levels_(std::move(levels)), maps_(std::move(maps)) {
  if (levels_.empty()) fail(ErrorCode::OutOfRange, "a tower needs at least one level");
  if (maps_.size() + 1 != levels_.size()) fail(ErrorCode::DepthMismatch, "a tower needs one map per adjacent pair");
  meta_.depth = static_cast<int>(levels_.size());
}

const FiniteGroup& Tower::level(int k) const {
  if (k < 1 || k > depth()) fail(ErrorCode::OutOfRange, "level " + std::to_string(k) + " outside 1.." + std::to_string(depth()));
  return levels_[static_cast<std::size_t>(k - 1)];
}

const Homomorphism& Tower::map(int k) const {
  if (k < 1 || k >= depth()) fail(ErrorCode::OutOfRange, "no map from level " + std::to_string(k + 1));
  return maps_[static_cast<std::size_t>(k - 1)];
}

Homomorphism Tower::composite(int j, int k) const {
  if (j < 1 || j > k || k > depth()) fail(ErrorCode::OutOfRange, "bad composite range");
  if (j == k) {
    const FiniteGroup& g = level(k);
    std::vector<Elem> id(g.order());
    for (Elem x = 0; x < g.order(); ++x) id[x] = x;
    return Homomorphism::unchecked(g, g, std::move(id));
  }
  Homomorphism h = map(k - 1);
  for (int i = k - 2; i >= j; --i) h = h.then(map(i));
  return h;
}

std::vector<std::uint32_t> Tower::orders() const {
  std::vector<std::uint32_t> out;
  for (const auto& g : levels_) out.push_back(g.order());
  return out;
}

const Subgroup& Tower::thread(const std::string& name, int k) const {
  auto it = threads_.find(name);
  if (it == threads_.end()) fail(ErrorCode::WrongFamily, "tower has no thread named " + name);
  if (k < 1 || k > depth()) fail(ErrorCode::OutOfRange, "thread level out of range");
  return it->second[static_cast<std::size_t>(k - 1)];
}

Elem Tower::element(const std::string& name, int k) const {
  auto it = elements_.find(name);
  if (it == elements_.end()) fail(ErrorCode::WrongFamily, "tower has no element named " + name);
  if (k < 1 || k > depth()) fail(ErrorCode::OutOfRange, "element level out of range");
  return it->second[static_cast<std::size_t>(k - 1)];
}

const std::vector<std::uint64_t>* Tower::codes(int k) const {
  if (codes_.empty() || k < 1 || k > depth()) return nullptr;
  return &codes_[static_cast<std::size_t>(k - 1)];
}

Tower Tower::truncated(int d) const {
  if (d < 1 || d > depth()) fail(ErrorCode::OutOfRange, "truncation depth out of range");
  Tower t(meta_, {levels_.begin(), levels_.begin() + d}, {maps_.begin(), maps_.begin() + (d - 1)});
  for (const auto& [name, v] : threads_) t.threads_[name] = {v.begin(), v.begin() + d};
  for (const auto& [name, v] : elements_) t.elements_[name] = {v.begin(), v.begin() + d};
  if (!codes_.empty()) t.codes_ = {codes_.begin(), codes_.begin() + d};
  t.reducer_ = reducer_;
  for (const auto& f : factors_) t.factors_.push_back(f.truncated(d));
  return t;
}

void Tower::replace_map_unchecked(int k, Homomorphism h) {
  if (k < 1 || k >= depth()) fail(ErrorCode::OutOfRange, "no map from level " + std::to_string(k + 1));
  maps_[static_cast<std::size_t>(k - 1)] = std::move(h);
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::HomomorphismLawViolation: return "HomomorphismLawViolation";
    case Violation::NotSurjective: return "NotSurjective";
    case Violation::GroupMismatch: return "GroupMismatch";
    case Violation::OrderNotDivisible: return "OrderNotDivisible";
    case Violation::CompositionMismatch: return "CompositionMismatch";
    case Violation::PrimeMismatch: return "PrimeMismatch";
  }
  return "Unknown";
}

ValidationReport validate(const Tower& t) {
  ValidationReport r;
  auto issue = [&](Violation v, int level, std::string detail) { r.issues.push_back({v, level, std::move(detail)}); };

  for (int k = 1; k < t.depth(); ++k) {
    const Homomorphism& h = t.map(k);
    if (!h.source().same_as(t.level(k + 1)) || !h.target().same_as(t.level(k))) {
      issue(Violation::GroupMismatch, k + 1, "map does not connect adjacent levels");
      continue;
    }
    if (auto bad = h.law_violation())
      issue(Violation::HomomorphismLawViolation, k + 1,
            "f(x*g) != f(x)*f(g) at x=" + std::to_string(bad->first) + ", g=" + std::to_string(bad->second));
    if (!h.surjective()) issue(Violation::NotSurjective, k + 1, "image is not the whole lower level");
    if (t.level(k + 1).order() % t.level(k).order() != 0)
      issue(Violation::OrderNotDivisible, k + 1, "lower order does not divide upper order");
  }

  std::set<std::uint64_t> primes;
  for (int k = 1; k <= t.depth(); ++k)
    for (auto p : t.level(k).primes()) primes.insert(p);
  if (std::vector<std::uint64_t>(primes.begin(), primes.end()) != t.meta().primes)
    issue(Violation::PrimeMismatch, 0, "meta primes differ from the primes of the level orders");

  // Composites against the family's direct reduction of element codes.
  if (t.codes(1) && t.reducer()) {
    for (int j = 1; j + 1 < t.depth(); ++j) {
      std::unordered_map<std::uint64_t, Elem> index;
      const auto& cj = *t.codes(j);
      for (Elem x = 0; x < cj.size(); ++x) index.emplace(cj[x], x);
      for (int k = j + 2; k <= t.depth(); ++k) {
        const Homomorphism c = t.composite(j, k);
        const auto& ck = *t.codes(k);
        for (Elem x = 0; x < ck.size(); ++x) {
          auto it = index.find(t.reducer()(ck[x], k, j));
          if (it == index.end() || it->second != c(x)) {
            issue(Violation::CompositionMismatch, k, "composite to level " + std::to_string(j) +
                                                         " disagrees with direct reduction at x=" + std::to_string(x));
            break;
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i < t.factors().size(); ++i)
    for (const auto& sub : validate(t.factors()[i]).issues)
      issue(sub.kind, sub.level, "factor " + std::to_string(i) + ": " + sub.detail);
  return r;
}

}  // namespace atlas
