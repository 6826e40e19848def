#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlas/casebook/audits.hpp"
#include "atlas/report/tower_spec.hpp"
#include "atlas/space/verdict.hpp"

namespace atlas {

inline constexpr int kReportSchemaVersion = 1;

struct Analysis {
  TowerSpec spec;
  LatticeTower lattice;
  CBReport cb;
  std::vector<SolitaryCandidate> solitary;
  // isolated_nodes(k) sizes for k = 1..D-1
  std::vector<std::size_t> isolated_counts;
  Verdict verdict;

  const Tower& tower() const { return lattice.tower(); }
};

Analysis analyze(const TowerSpec& spec, std::optional<int> max_rank = std::nullopt);

using ojson = nlohmann::ordered_json;

// Full report; the table and DOT views are projections of the same data.
ojson report_json(const Analysis& a);
ojson tower_json(const Tower& t, const TowerSpec& spec);
ojson height_json(const ApparentHeight& h);
ojson verdict_json(const Verdict& v);
// countsPerLevel plus every node with order, index and parent.
ojson lattice_json(const LatticeTower& lt);
ojson audit_json(const AuditResult& r);

std::string report_table(const Analysis& a);
std::string verdict_table(const Analysis& a);
std::string lattice_table(const LatticeTower& lt);
std::string audits_table(const std::vector<AuditResult>& rs);

// One cluster per level, edges follow the parent map. With a filtration,
// isolated nodes are double circles and solitary candidates are filled.
std::string lattice_dot(const LatticeTower& lt, const CBReport* cb = nullptr,
                        const std::vector<SolitaryCandidate>* solitary = nullptr);

// "Exact(2)" or "Unbounded(4)"
std::string height_label(const ApparentHeight& h, int horizon);

}  // namespace atlas
