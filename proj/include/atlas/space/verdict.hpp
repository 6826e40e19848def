#pragma once

#include <string>
#include <vector>

#include "atlas/space/cb.hpp"

namespace atlas {

enum class VerdictTag {
  FiniteDiscrete,
  OmegaAlphaN,
  Cantor,
  Pelczynski,
  PelczynskiPlusOmegaN,
  HeightTwoInfiniteSolitary,
  Undetermined,
};
std::string_view to_string(VerdictTag t);

enum class Confidence { Certified, EmpiricalOnly };
std::string_view to_string(Confidence c);

struct Evidence {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct Verdict {
  VerdictTag tag = VerdictTag::Undetermined;
  int alpha = 0;  // OmegaAlphaN
  int n = 0;      // OmegaAlphaN, PelczynskiPlusOmegaN
  Confidence confidence = Confidence::EmpiricalOnly;
  std::vector<Evidence> evidence;
  // a certificate applied but the finite data contradicts it
  bool conflict = false;

  // e.g. "OmegaAlphaN(1,1)"
  std::string label() const;
};

// Rank-1 survivor count per level, stable when equal over the last
// min(3, D-1) levels (at least two levels are required).
struct StableCount {
  bool stable = false;
  std::size_t value = 0;
  std::vector<std::size_t> per_level;
  int window = 0;
};
StableCount stabilized_rank1_count(const CBReport& report);

Verdict classify(const Tower& t, const LatticeTower& lt, const CBReport& report);

}  // namespace atlas
