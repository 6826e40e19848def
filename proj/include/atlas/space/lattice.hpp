#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "atlas/tower/tower.hpp"

namespace atlas {

// (level, index into that level's canonical subgroup list); levels are 1..D.
struct NodeRef {
  int level = 0;
  std::uint32_t index = 0;
  auto operator<=>(const NodeRef&) const = default;
};

// A run of nodes, one per level from start_level upward, each mapping onto
// the previous one.
struct Thread {
  int start_level = 0;
  std::vector<std::uint32_t> path;
  std::vector<std::uint32_t> index_seq;
};

enum class LatticeRoute {
  Auto,    // factor route for coprime products, group route otherwise
  Group,   // enumerate every level directly
  Factor,  // combine factor lattices; needs a coprime product tower
};

// The inverse system of subgroup lattices: the finitely branching tree whose
// branch space approximates S(G).
class LatticeTower {
 public:
  static LatticeTower build(const Tower& t, LatticeRoute route = LatticeRoute::Auto);

  const Tower& tower() const { return tower_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  std::size_t count(int k) const { return lvl(k).nodes.size(); }
  std::vector<std::size_t> counts() const;

  const Subgroup& node(int k, std::uint32_t i) const { return lvl(k).nodes.at(i); }
  std::span<const Subgroup> nodes(int k) const { return lvl(k).nodes; }
  // Image of node (k, i) at level k-1; k >= 2.
  std::uint32_t parent(int k, std::uint32_t i) const;
  std::span<const std::uint32_t> children(int k, std::uint32_t i) const;
  std::uint32_t full_preimage_child(int k, std::uint32_t i) const;
  std::uint32_t group_index(int k, std::uint32_t i) const { return node(k, i).index(); }
  std::optional<std::uint32_t> find(int k, const ElementSet& members) const;

  bool factorized() const { return factorized_; }
  // Per-factor node indices of a node of a factorized lattice.
  std::span<const std::uint32_t> factor_tuple(int k, std::uint32_t i) const;
  const std::vector<LatticeTower>& factor_lattices() const { return factor_lattices_; }

  // The thread through (k, i) that follows full preimages up to depth D.
  Thread full_preimage_thread(int k, std::uint32_t i) const;
  // Image of node (k, i) at level j <= k.
  std::uint32_t ancestor(int k, std::uint32_t i, int j) const;

  // Drops one child edge without repairing anything; for fault injection.
  void drop_child_edge_for_testing(int k, std::uint32_t i, std::uint32_t child);

 private:
  struct Level {
    std::vector<Subgroup> nodes;
    std::vector<std::uint32_t> parent;
    std::vector<std::vector<std::uint32_t>> children;
    std::vector<std::uint32_t> full_preimage;
    std::unordered_map<ElementSet, std::uint32_t, ElementSetHash> lookup;
    std::vector<std::vector<std::uint32_t>> tuples;
  };
  const Level& lvl(int k) const;
  Level& lvl(int k);

  Tower tower_;
  std::vector<Level> levels_;
  bool factorized_ = false;
  std::vector<LatticeTower> factor_lattices_;
};

// All level-(k+j) nodes whose image at level k is node (k, i).
std::vector<std::uint32_t> basic_open_fiber(const LatticeTower& lt, int k, std::uint32_t i, int j);

}  // namespace atlas
