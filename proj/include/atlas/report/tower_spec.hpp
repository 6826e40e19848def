#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "atlas/tower/tower.hpp"

namespace atlas {

// Parsed, validated tower description. Built-in families carry their
// parameters; "custom" keeps the explicit group and map documents.
struct TowerSpec {
  std::string family;
  std::uint64_t p = 0;
  std::uint32_t n = 0;
  int depth = 0;
  std::vector<TowerSpec> factors;  // product only, already flattened
  std::vector<std::uint64_t> primes;
  nlohmann::json custom;           // custom only: {"levels":[...],"maps":[...],"flags":{...}}
};

int default_depth(std::string_view family);
std::vector<std::string> family_names();

// Throws SchemaViolation listing every offending field as a JSON pointer,
// PrimeOverlap / DepthMismatch for inconsistent products and CapExceeded when
// the estimated top order is above the cap.
TowerSpec parse_tower_spec(const nlohmann::json& doc);
TowerSpec parse_tower_spec_text(std::string_view text);

// Estimated order of the top level (saturating at UINT64_MAX).
std::uint64_t estimated_top_order(const TowerSpec& spec);

Tower build_tower(const TowerSpec& spec);

// Canonical form: only the fields that matter, defaults filled in.
nlohmann::ordered_json to_json(const TowerSpec& spec);

// Group literal: {"kind":"cyclic","n":4}, {"kind":"abelian","moduli":[2,2]},
// {"kind":"dihedral","n":4}, {"kind":"quaternion8"},
// {"kind":"table","table":[[...]],"generators":[...]},
// {"kind":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]},
// {"kind":"matrix","modulus":3,"generators":[[[1,1],[0,1]]]}.
FiniteGroup parse_group_literal(const nlohmann::json& doc, const std::string& path = "");

}  // namespace atlas
