#include "atlas/space/cb.hpp"

#include <algorithm>

#include "atlas/casebook/audits.hpp"
#include "atlas/error.hpp"
#include "atlas/group/operators.hpp"

namespace atlas {

bool CBReport::survives(int r, NodeRef n) const { return apparent_rank(n) >= r; }

int CBReport::apparent_rank(NodeRef n) const {
  if (n.level < 1 || n.level > horizon) fail(ErrorCode::OutOfRange, "node level outside the horizon");
  return rank_[static_cast<std::size_t>(n.level - 1)].at(n.index);
}

std::vector<std::size_t> CBReport::survivor_counts(int r) const {
  std::vector<std::size_t> out;
  for (const auto& lvl : survivors.at(static_cast<std::size_t>(r))) out.push_back(lvl.size());
  return out;
}

int default_max_rank(const LatticeTower& lt) {
  const int primes = static_cast<int>(lt.tower().meta().primes.size());
  return std::max(0, std::min(lt.depth() - 1, primes + 2));
}

CBReport cb_filtration(const LatticeTower& lt, std::optional<int> max_rank) {
  const int depth = lt.depth();
  const int R = max_rank.value_or(default_max_rank(lt));
  if (R < 0 || R >= depth) fail(ErrorCode::OutOfRange, "max rank must lie in 0..depth-1");

  CBReport rep;
  rep.horizon = depth;
  rep.max_rank = R;
  rep.rank_.resize(static_cast<std::size_t>(depth));
  for (int k = 1; k <= depth; ++k) rep.rank_[static_cast<std::size_t>(k - 1)].assign(lt.count(k), 0);

  // in[k-1][i]: membership in the current S_r
  std::vector<std::vector<char>> in(static_cast<std::size_t>(depth));
  for (int k = 1; k <= depth; ++k) in[static_cast<std::size_t>(k - 1)].assign(lt.count(k), 1);
  bool root_in = true;

  auto snapshot = [&] {
    std::vector<std::vector<std::uint32_t>> s(static_cast<std::size_t>(depth));
    for (int k = 1; k <= depth; ++k) {
      const auto& m = in[static_cast<std::size_t>(k - 1)];
      for (std::uint32_t i = 0; i < m.size(); ++i)
        if (m[i]) s[static_cast<std::size_t>(k - 1)].push_back(i);
    }
    rep.survivors.push_back(std::move(s));
    rep.root_survives.push_back(root_in);
  };
  snapshot();

  std::vector<std::vector<char>> chain(static_cast<std::size_t>(depth));
  for (int r = 0; r <= R; ++r) {
    // chain flags bottom-up over S_r
    for (int k = depth; k >= 1; --k) {
      const auto& m = in[static_cast<std::size_t>(k - 1)];
      auto& c = chain[static_cast<std::size_t>(k - 1)];
      c.assign(m.size(), 0);
      for (std::uint32_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        int live = 0;
        bool below = true;
        for (auto ch : lt.children(k, i))
          if (in[static_cast<std::size_t>(k)][ch]) {
            ++live;
            below = chain[static_cast<std::size_t>(k)][ch];
          }
        c[i] = live <= 1 && below;
      }
    }
    int live = 0;
    bool below = true;
    for (std::uint32_t i = 0; i < in[0].size(); ++i)
      if (in[0][i]) {
        ++live;
        below = chain[0][i];
      }
    const bool root_chain = live <= 1 && below;

    const int cand_top = depth - r - 1;
    std::vector<NodeRef> pruned;
    for (int k = 1; k <= depth; ++k) {
      auto& m = in[static_cast<std::size_t>(k - 1)];
      for (std::uint32_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (k > cand_top) {
          m[i] = 0;
        } else if (chain[static_cast<std::size_t>(k - 1)][i]) {
          pruned.push_back({k, i});
          m[i] = 0;
        } else {
          rep.rank_[static_cast<std::size_t>(k - 1)][i] = r + 1;
        }
      }
    }
    bool root_pruned = false;
    if (root_in) {
      if (cand_top < 0) root_in = false;
      else if (root_chain) root_pruned = true, root_in = false;
    }
    rep.apparent_isolated.push_back(std::move(pruned));
    rep.root_pruned.push_back(root_pruned);
    rep.conclusive.push_back(r <= depth - 3);
    snapshot();
  }

  auto nonempty = [&](int r) {
    if (rep.root_survives[static_cast<std::size_t>(r)]) return true;
    for (const auto& lvl : rep.survivors[static_cast<std::size_t>(r)])
      if (!lvl.empty()) return true;
    return false;
  };
  for (int r = 0; r <= R; ++r) {
    if (!nonempty(r)) {
      rep.height = {r, true, -1};
      return rep;
    }
    const bool prunes = !rep.apparent_isolated[static_cast<std::size_t>(r)].empty() || rep.root_pruned[static_cast<std::size_t>(r)];
    if (rep.conclusive[static_cast<std::size_t>(r)] && !prunes) {
      rep.height = {r, true, -1};
      return rep;
    }
  }
  if (!nonempty(R + 1)) {
    rep.height = {R + 1, true, -1};
    return rep;
  }
  int exhausted = R + 1;
  for (int r = 0; r <= R; ++r)
    if (!rep.conclusive[static_cast<std::size_t>(r)]) {
      exhausted = r;
      break;
    }
  rep.height = {R + 2, false, exhausted};
  return rep;
}

namespace {

// flag[k-1][i] for levels k..D, computed bottom-up; keep(k, i, child) decides
// whether a single-child step continues the run.
template <class Keep>
std::vector<std::uint32_t> single_runs(const LatticeTower& lt, int k, Keep keep) {
  const int depth = lt.depth();
  if (k < 1 || k >= depth) fail(ErrorCode::OutOfRange, "level must lie in 1..depth-1");
  std::vector<char> above(lt.count(depth), 1);
  for (int j = depth - 1; j >= k; --j) {
    std::vector<char> cur(lt.count(j), 0);
    for (std::uint32_t i = 0; i < cur.size(); ++i) {
      const auto ch = lt.children(j, i);
      cur[i] = ch.size() == 1 && above[ch[0]] && keep(j, i, ch[0]);
    }
    above = std::move(cur);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < above.size(); ++i)
    if (above[i]) out.push_back(i);
  return out;
}

}  // namespace

std::vector<std::uint32_t> isolated_nodes(const LatticeTower& lt, int k) {
  return single_runs(lt, k, [&](int j, std::uint32_t i, std::uint32_t c) { return lt.group_index(j, i) == lt.group_index(j + 1, c); });
}

std::vector<std::uint32_t> chain_apparent_nodes(const LatticeTower& lt, int k) {
  return single_runs(lt, k, [](int, std::uint32_t, std::uint32_t) { return true; });
}

DensityResult density_check(const LatticeTower& lt) {
  DensityResult res;
  for (int k = 1; k < lt.depth(); ++k)
    for (std::uint32_t i = 0; i < lt.count(k); ++i) {
      const std::uint32_t fp = lt.full_preimage_child(k, i);
      const auto ch = lt.children(k, i);
      if (std::find(ch.begin(), ch.end(), fp) == ch.end() || lt.group_index(k + 1, fp) != lt.group_index(k, i))
        res.counterexamples.push_back({k, i});
    }
  res.ok = res.counterexamples.empty();
  return res;
}

std::string_view to_string(CertStatus s) { return s == CertStatus::Certified ? "Certified" : "Empirical"; }

std::vector<std::uint32_t> survivor_descendants(const LatticeTower& lt, const CBReport& report, int r, NodeRef n, int level) {
  if (level < n.level) fail(ErrorCode::OutOfRange, "descendants live above the node");
  std::vector<std::uint32_t> frontier;
  if (report.apparent_rank(n) >= r) frontier.push_back(n.index);
  for (int k = n.level; k < level; ++k) {
    std::vector<std::uint32_t> next;
    for (auto x : frontier)
      for (auto c : lt.children(k, x))
        if (report.apparent_rank({k + 1, c}) >= r) next.push_back(c);
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return frontier;
}

bool inside_centralizer_of_z(const LatticeTower& lt, const CBReport& report, NodeRef n) {
  const Tower& t = lt.tower();
  const int top = lt.depth() - 1;
  if (!t.has_thread("Z") || top < n.level) return false;
  const Subgroup& z = t.thread("Z", top);
  const Subgroup cz = centralizer(z);
  const auto desc = survivor_descendants(lt, report, 1, n, top);
  if (desc.empty()) return false;
  return std::all_of(desc.begin(), desc.end(), [&](std::uint32_t i) {
    const Subgroup& h = lt.node(top, i);
    return h.is_subgroup_of(cz) && intersection(h, z).is_trivial();
  });
}

namespace {

// The algebraic criterion, if any, that makes node (k, i) solitary.
std::string certify(const LatticeTower& lt, const CBReport& report, NodeRef n, bool pirim_ok, const std::vector<char>& hxz_open) {
  const Tower& t = lt.tower();
  const Subgroup& h = lt.node(n.level, n.index);
  if (t.meta().flags.virtually_zp && inside_centralizer_of_z(lt, report, n)) return "virtually_zp_centralizer";
  if (t.meta().family == "pirim" && pirim_ok && h == t.thread("H", n.level)) return "pirim_irreducibility";
  if (!hxz_open.empty() && hxz_open[static_cast<std::size_t>(n.level - 1)] && t.factors()[0].level(n.level).order() == h.order()) {
    // H_k x 1: the right coordinate of every member is the identity
    const FiniteGroup& r = t.factors()[1].level(n.level);
    bool left = true;
    h.members().for_each([&](Elem x) { left = left && x % r.order() == r.identity(); });
    if (left) return "hxz_commutator_open";
  }
  return {};
}

}  // namespace

std::vector<SolitaryCandidate> solitary_candidates(const LatticeTower& lt, const CBReport& report) {
  std::vector<SolitaryCandidate> out;
  if (report.max_rank < 1) return out;
  const int depth = lt.depth();
  const Tower& t = lt.tower();
  const bool pirim_ok = t.meta().family == "pirim" && pirim_irreducibility_audit(t, 2).passed;
  // H x Z_p over one prime: H_k x 1 is solitary iff H' is open in H, seen
  // here as [H_j : H_j'] constant for j = k..D
  std::vector<char> hxz_open;
  if (depth >= 2 && t.factors().size() == 2 && t.factors()[1].meta().family == "zp" &&
      t.factors()[0].meta().primes.size() == 1 && t.factors()[0].meta().primes == t.factors()[1].meta().primes) {
    const auto idx = abelianization_indices(t.factors()[0]);
    hxz_open.assign(static_cast<std::size_t>(depth), 0);
    for (int k = depth - 1; k >= 1; --k)
      hxz_open[static_cast<std::size_t>(k - 1)] =
          idx[static_cast<std::size_t>(k - 1)] == idx[static_cast<std::size_t>(k)] && (k == depth - 1 || hxz_open[static_cast<std::size_t>(k)]);
  }

  // pruned at rank 1: every node of such a thread is in the list, report the lowest
  std::vector<std::vector<char>> pruned1(static_cast<std::size_t>(depth));
  for (int k = 1; k <= depth; ++k) pruned1[static_cast<std::size_t>(k - 1)].assign(lt.count(k), 0);
  for (const auto& n : report.apparent_isolated[1]) pruned1[static_cast<std::size_t>(n.level - 1)][n.index] = 1;
  for (const auto& n : report.apparent_isolated[1]) {
    if (n.level > 1 && pruned1[static_cast<std::size_t>(n.level - 2)][lt.parent(n.level, n.index)]) continue;
    SolitaryCandidate c{n, CertStatus::Empirical, certify(lt, report, n, pirim_ok, hxz_open)};
    if (!c.certificate.empty()) c.status = CertStatus::Certified;
    // a chain seen over a single level of S_1 is too shallow to report unaided
    if (c.status == CertStatus::Certified || n.level <= depth - 3) out.push_back(std::move(c));
  }

  // S_1 nodes at the top of the rank-1 horizon were never tested for chains
  const int k = depth - 1;
  if (k >= 1) {
    for (auto i : report.survivors[1][static_cast<std::size_t>(k - 1)]) {
      const NodeRef n{k, i};
      if (k > 1 && pruned1[static_cast<std::size_t>(k - 2)][lt.parent(k, i)]) continue;
      auto cert = certify(lt, report, n, pirim_ok, hxz_open);
      if (!cert.empty()) out.push_back({n, CertStatus::Certified, std::move(cert)});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.node < b.node; });
  return out;
}

ConjugationAuditResult conjugation_audit(const LatticeTower& lt, const CBReport& report) {
  ConjugationAuditResult res;
  for (int k = 1; k <= lt.depth(); ++k) {
    const FiniteGroup& g = lt.tower().level(k);
    if (g.is_abelian()) continue;
    for (std::uint32_t i = 0; i < lt.count(k); ++i) {
      const int r = report.apparent_rank({k, i});
      for (Elem x : g.generators()) {
        const auto j = lt.find(k, conjugate(lt.node(k, i), x).members());
        if (!j) fail(ErrorCode::InvalidGroup, "conjugate subgroup missing from the lattice");
        if (report.apparent_rank({k, *j}) != r) res.mismatches.push_back({{k, i}, {k, *j}});
      }
    }
  }
  res.ok = res.mismatches.empty();
  return res;
}

bool height_bound_audit(const Tower& t, const CBReport& report) {
  const int bound = static_cast<int>(t.meta().primes.size()) + 1;
  if (report.height.exact) return report.height.value <= bound;
  return report.height.exhausted_at_rank <= bound;
}

}  // namespace atlas
