#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atlas/space/lattice.hpp"

namespace atlas {

// Depth-bounded Cantor-Bendixson filtration of the lattice tree.
//
// The tree has a virtual root (level 0) above all level-1 nodes. S_0 is every
// node. At rank r the candidates are S_r nodes at levels <= D-r-1 (the root
// included); a candidate whose S_r-subtree is a chain is pruned, every other
// candidate survives into S_{r+1}. Rank r is conclusive when r <= D-3, so
// some candidates sit two or more levels above the bottom of S_r; only a
// conclusive rank that prunes nothing pins the height down.
struct ApparentHeight {
  int value = 0;
  bool exact = false;
  // first rank whose decision the horizon could not support; -1 when exact
  int exhausted_at_rank = -1;
};

class CBReport {
 public:
  int horizon = 0;
  int max_rank = 0;
  // survivors[r][k-1]: sorted indices of level-k nodes in S_r, r = 0..max_rank+1
  std::vector<std::vector<std::vector<std::uint32_t>>> survivors;
  std::vector<bool> root_survives;
  // non-root nodes pruned at rank r, r = 0..max_rank
  std::vector<std::vector<NodeRef>> apparent_isolated;
  std::vector<bool> root_pruned;
  std::vector<bool> conclusive;
  ApparentHeight height;

  bool survives(int r, NodeRef n) const;
  // Largest r <= max_rank+1 with n in S_r.
  int apparent_rank(NodeRef n) const;
  // Non-root S_r nodes per level.
  std::vector<std::size_t> survivor_counts(int r) const;

 private:
  friend CBReport cb_filtration(const LatticeTower&, std::optional<int>);
  std::vector<std::vector<int>> rank_;
};

// S_r nodes at `level` in the subtree of n (n itself when level == n.level).
std::vector<std::uint32_t> survivor_descendants(const LatticeTower& lt, const CBReport& report, int r, NodeRef n, int level);

// Finite shadow of "H <= C_G(Z) and H n Z = 1" for a virtually Z_p tower: every
// rank-1 descendant of n at level D-1 passes the test there (and one exists).
bool inside_centralizer_of_z(const LatticeTower& lt, const CBReport& report, NodeRef n);

int default_max_rank(const LatticeTower& lt);
CBReport cb_filtration(const LatticeTower& lt, std::optional<int> max_rank = std::nullopt);

// Nodes at level k whose whole subtree to depth D is a chain with constant
// group index (finite witness of an open subgroup).
std::vector<std::uint32_t> isolated_nodes(const LatticeTower& lt, int k);
// Nodes at level k whose subtree is a chain, index ignored.
std::vector<std::uint32_t> chain_apparent_nodes(const LatticeTower& lt, int k);

struct DensityResult {
  bool ok = true;
  std::vector<NodeRef> counterexamples;
};
// Every node below the top must keep its full-preimage child, at equal index.
DensityResult density_check(const LatticeTower& lt);

enum class CertStatus { Empirical, Certified };
std::string_view to_string(CertStatus s);

struct SolitaryCandidate {
  NodeRef node;
  CertStatus status = CertStatus::Empirical;
  std::string certificate;  // empty when Empirical
};

// One entry per candidate thread, at its lowest level. Threads pruned at
// rank 1 with two or more levels of S_1 below them are found empirically;
// shallower threads, and threads reaching the top of the horizon undecided,
// are listed only when an algebraic criterion settles them.
std::vector<SolitaryCandidate> solitary_candidates(const LatticeTower& lt, const CBReport& report);

struct ConjugationAuditResult {
  bool ok = true;
  std::vector<std::pair<NodeRef, NodeRef>> mismatches;
};
// H and H^g get equal apparent ranks for every node and every level
// generator g (generators suffice: conjugation by a product composes).
ConjugationAuditResult conjugation_audit(const LatticeTower& lt, const CBReport& report);

bool height_bound_audit(const Tower& t, const CBReport& report);

}  // namespace atlas
