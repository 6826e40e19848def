#pragma once

// Structural property checks shared by the unit suite and the acceptance
// binary. Each returns how many node-level assertions ran and which failed.

#include <algorithm>
#include <string>
#include <vector>

#include "atlas/space/cb.hpp"

namespace props {

using namespace atlas;

struct Outcome {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 20) failures.push_back(what);
    if (!ok && failures.size() == 20) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

inline std::string at(int r, int k, std::uint32_t i) {
  return "r=" + std::to_string(r) + " (" + std::to_string(k) + "," + std::to_string(i) + ")";
}

// S_r at depth D-1 is contained in S_r at depth D, and equal on the levels
// where the shorter tower still has rank-r data (k <= D-1-r).
inline Outcome truncation_stability(const Tower& t) {
  Outcome o;
  if (t.depth() < 2) return o;
  const auto l = LatticeTower::build(t);
  const auto lp = LatticeTower::build(t.truncated(t.depth() - 1));
  const auto c = cb_filtration(l);
  const auto cp = cb_filtration(lp);
  const int dp = lp.depth();
  for (int r = 0; r <= std::min(c.max_rank, cp.max_rank) + 1; ++r)
    for (int k = 1; k <= dp; ++k)
      for (std::uint32_t i = 0; i < l.count(k); ++i) {
        const bool shallow = cp.survives(r, {k, i}), deep = c.survives(r, {k, i});
        o.expect(!shallow || deep, "containment " + at(r, k, i));
        if (k <= dp - r) o.expect(shallow == deep, "equality " + at(r, k, i));
      }
  return o;
}

// Apparently isolated at depth D implies apparently isolated at depth D-1.
inline Outcome isolation_antitone(const Tower& t) {
  Outcome o;
  if (t.depth() < 3) return o;
  const auto l = LatticeTower::build(t);
  const auto lp = LatticeTower::build(t.truncated(t.depth() - 1));
  for (int k = 1; k < lp.depth(); ++k) {
    const auto deep = isolated_nodes(l, k), shallow = isolated_nodes(lp, k);
    const auto cd = chain_apparent_nodes(l, k), cs = chain_apparent_nodes(lp, k);
    for (auto i : deep) {
      o.expect(std::binary_search(shallow.begin(), shallow.end(), i), "isolated " + at(0, k, i));
      o.expect(std::binary_search(cd.begin(), cd.end(), i), "isolated but not chain " + at(0, k, i));
    }
    for (auto i : cd) o.expect(std::binary_search(cs.begin(), cs.end(), i), "chain " + at(0, k, i));
  }
  return o;
}

// [G_k : H_k] never drops along the parent map, grows at most by the kernel
// order, and is constant along full-preimage threads.
inline Outcome index_monotone(const Tower& t) {
  Outcome o;
  const auto l = LatticeTower::build(t);
  for (int k = 2; k <= l.depth(); ++k) {
    const std::uint64_t kernel = t.level(k).order() / t.level(k - 1).order();
    for (std::uint32_t i = 0; i < l.count(k); ++i) {
      const auto p = l.parent(k, i);
      o.expect(l.group_index(k, i) >= l.group_index(k - 1, p), "index drops " + at(0, k, i));
      o.expect(l.group_index(k, i) <= l.group_index(k - 1, p) * kernel, "index jumps " + at(0, k, i));
    }
  }
  for (int k = 1; k <= l.depth(); ++k)
    for (std::uint32_t i = 0; i < l.count(k); ++i) {
      const auto th = l.full_preimage_thread(k, i);
      for (auto ix : th.index_seq) o.expect(ix == th.index_seq.front(), "full preimage thread " + at(0, k, i));
    }
  return o;
}

// S_{r+1} is inside S_r, and every survivor's parent survives.
inline Outcome downward_closed(const Tower& t) {
  Outcome o;
  const auto l = LatticeTower::build(t);
  const auto c = cb_filtration(l);
  for (int r = 0; r <= c.max_rank + 1; ++r)
    for (int k = 1; k <= l.depth(); ++k)
      for (std::uint32_t i = 0; i < l.count(k); ++i) {
        if (!c.survives(r, {k, i})) continue;
        if (r > 0) o.expect(c.survives(r - 1, {k, i}), "not nested " + at(r, k, i));
        if (k >= 2) o.expect(c.survives(r, {k - 1, l.parent(k, i)}), "parent pruned " + at(r, k, i));
        o.expect(c.root_survives[static_cast<std::size_t>(r)], "root pruned " + at(r, k, i));
      }
  return o;
}

// Conjugate nodes share their apparent rank.
inline Outcome conjugation_invariant(const Tower& t) {
  Outcome o;
  const auto l = LatticeTower::build(t);
  const auto c = cb_filtration(l);
  const auto res = conjugation_audit(l, c);
  std::size_t nodes = 0;
  for (int k = 1; k <= l.depth(); ++k) nodes += l.count(k);
  o.checked = nodes;
  for (const auto& [a, b] : res.mismatches)
    o.failures.push_back(at(c.apparent_rank(a), a.level, a.index) + " vs " + at(c.apparent_rank(b), b.level, b.index));
  if (!res.ok && o.failures.empty()) o.failures.push_back("conjugation audit failed");
  return o;
}

// Every node below the top keeps its full preimage as a child of equal index.
inline Outcome density_witness(const Tower& t) {
  Outcome o;
  const auto l = LatticeTower::build(t);
  const auto d = density_check(l);
  for (const auto& n : d.counterexamples) o.failures.push_back(at(0, n.level, n.index));
  for (int k = 1; k < l.depth(); ++k)
    for (std::uint32_t i = 0; i < l.count(k); ++i) {
      const auto fp = l.full_preimage_child(k, i);
      o.expect(l.parent(k + 1, fp) == i && l.group_index(k + 1, fp) == l.group_index(k, i), "witness " + at(0, k, i));
    }
  if (!d.ok && o.failures.empty()) o.failures.push_back("density check failed");
  return o;
}

struct Named {
  const char* name;
  Outcome (*run)(const Tower&);
};

inline std::vector<Named> all() {
  return {{"truncation_stability", truncation_stability}, {"isolation_antitone", isolation_antitone},
          {"index_monotone", index_monotone},             {"downward_closed", downward_closed},
          {"conjugation_invariant", conjugation_invariant}, {"density_witness", density_witness}};
}

}  // namespace props
