#include "atlas/report/report.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace atlas {

Analysis analyze(const TowerSpec& spec, std::optional<int> max_rank) {
  Analysis a;
  a.spec = spec;
  a.lattice = LatticeTower::build(build_tower(spec));
  a.cb = cb_filtration(a.lattice, max_rank);
  a.solitary = solitary_candidates(a.lattice, a.cb);
  for (int k = 1; k < a.lattice.depth(); ++k) a.isolated_counts.push_back(isolated_nodes(a.lattice, k).size());
  a.verdict = classify(a.tower(), a.lattice, a.cb);
  return a;
}

std::string height_label(const ApparentHeight& h, int horizon) {
  return h.exact ? "Exact(" + std::to_string(h.value) + ")" : "Unbounded(" + std::to_string(horizon) + ")";
}

ojson tower_json(const Tower& t, const TowerSpec& spec) {
  const auto& m = t.meta();
  ojson j;
  j["family"] = m.family;
  j["primes"] = m.primes;
  j["depth"] = t.depth();
  j["orders"] = t.orders();
  j["flags"] = {{"abelian", m.flags.abelian},
                {"nilpotent", m.flags.nilpotent},
                {"virtuallyZp", m.flags.virtually_zp},
                {"finitelyGenerated", m.flags.finitely_generated},
                {"centerTrivialExpected", m.flags.center_trivial_expected}};
  j["dimEstimate"] = m.dim_estimate ? ojson(*m.dim_estimate) : ojson(nullptr);
  if (m.family == "pirim") j["pirimExponent"] = m.pirim_m;
  j["spec"] = to_json(spec);
  return j;
}

ojson height_json(const ApparentHeight& h) {
  ojson j;
  j["value"] = h.value;
  j["exact"] = h.exact;
  if (!h.exact) j["exhaustedAtRank"] = h.exhausted_at_rank;
  return j;
}

ojson verdict_json(const Verdict& v) {
  ojson j;
  j["tag"] = std::string(to_string(v.tag));
  j["label"] = v.label();
  ojson params = ojson::object();
  if (v.tag == VerdictTag::OmegaAlphaN) params["alpha"] = v.alpha;
  if (v.tag == VerdictTag::OmegaAlphaN || v.tag == VerdictTag::PelczynskiPlusOmegaN) params["n"] = v.n;
  j["params"] = params;
  j["confidence"] = std::string(to_string(v.confidence));
  j["conflict"] = v.conflict;
  j["evidence"] = ojson::array();
  for (const auto& e : v.evidence) j["evidence"].push_back({{"name", e.name}, {"holds", e.holds}, {"detail", e.detail}});
  return j;
}

ojson report_json(const Analysis& a) {
  ojson j;
  j["version"] = kReportSchemaVersion;
  j["tower"] = tower_json(a.tower(), a.spec);
  j["lattice"] = {{"countsPerLevel", a.lattice.counts()}, {"route", a.lattice.factorized() ? "factor" : "group"}};

  ojson cb;
  cb["horizon"] = a.cb.horizon;
  cb["maxRank"] = a.cb.max_rank;
  cb["survivorsPerRank"] = ojson::array();
  for (int r = 0; r <= a.cb.max_rank + 1; ++r) cb["survivorsPerRank"].push_back(a.cb.survivor_counts(r));
  ojson h = height_json(a.cb.height);
  h["label"] = height_label(a.cb.height, a.cb.horizon);
  cb["apparentHeight"] = h;
  cb["isolatedCounts"] = a.isolated_counts;
  cb["solitary"] = ojson::array();
  for (const auto& c : a.solitary) {
    ojson s;
    s["level"] = c.node.level;
    s["index"] = c.node.index;
    s["order"] = a.lattice.node(c.node.level, c.node.index).order();
    s["certified"] = c.status == CertStatus::Certified;
    if (!c.certificate.empty()) s["certificate"] = c.certificate;
    cb["solitary"].push_back(s);
  }
  j["cb"] = cb;
  j["verdict"] = verdict_json(a.verdict);
  return j;
}

ojson lattice_json(const LatticeTower& lt) {
  ojson j;
  j["countsPerLevel"] = lt.counts();
  j["levels"] = ojson::array();
  for (int k = 1; k <= lt.depth(); ++k) {
    ojson nodes = ojson::array();
    for (std::uint32_t i = 0; i < lt.count(k); ++i) {
      ojson n;
      n["index"] = i;
      n["order"] = lt.node(k, i).order();
      n["groupIndex"] = lt.group_index(k, i);
      n["parent"] = k >= 2 ? ojson(lt.parent(k, i)) : ojson(nullptr);
      nodes.push_back(n);
    }
    j["levels"].push_back({{"level", k}, {"order", lt.tower().level(k).order()}, {"nodes", nodes}});
  }
  return j;
}

ojson audit_json(const AuditResult& r) {
  ojson j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["levels"] = {r.levels.first, r.levels.second};
  j["details"] = ojson::array();
  for (const auto& d : r.details) j["details"].push_back({{"level", d.level}, {"key", d.key}, {"value", d.value}});
  return j;
}

namespace {

std::string join(const std::vector<std::size_t>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

template <class T>
std::string join_any(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void row(std::ostringstream& os, const std::string& key, const std::string& val) {
  os << "  " << std::left << std::setw(18) << key << val << "\n";
}

}  // namespace

std::string verdict_table(const Analysis& a) {
  std::ostringstream os;
  const auto& v = a.verdict;
  os << "verdict " << v.label() << " [" << to_string(v.confidence) << "]" << (v.conflict ? " CONFLICT" : "") << "\n";
  for (const auto& e : v.evidence) os << "  " << (e.holds ? "+ " : "- ") << std::left << std::setw(22) << e.name << e.detail << "\n";
  return os.str();
}

std::string report_table(const Analysis& a) {
  std::ostringstream os;
  const auto& t = a.tower();
  os << "tower " << t.meta().family << "\n";
  row(os, "primes", join_any(t.meta().primes));
  row(os, "depth", std::to_string(t.depth()));
  row(os, "orders", join_any(t.orders()));
  row(os, "subgroups", join(a.lattice.counts()));
  os << "filtration (horizon " << a.cb.horizon << ", max rank " << a.cb.max_rank << ")\n";
  for (int r = 0; r <= a.cb.max_rank + 1; ++r) row(os, "S_" + std::to_string(r), join(a.cb.survivor_counts(r)));
  row(os, "height", height_label(a.cb.height, a.cb.horizon) + (a.cb.height.exact ? "" : ", apparent " + std::to_string(a.cb.height.value)));
  row(os, "isolated", join(a.isolated_counts));
  std::string sol;
  for (const auto& c : a.solitary)
    sol += (sol.empty() ? "" : ", ") + std::string("(") + std::to_string(c.node.level) + "," + std::to_string(c.node.index) + ")" +
           (c.status == CertStatus::Certified ? "*" : "");
  row(os, "solitary", sol.empty() ? "none" : sol + (std::any_of(a.solitary.begin(), a.solitary.end(),
                                                               [](const auto& c) { return c.status == CertStatus::Certified; })
                                                       ? "   (* certified)"
                                                       : ""));
  os << verdict_table(a);
  return os.str();
}

std::string lattice_table(const LatticeTower& lt) {
  std::ostringstream os;
  os << "level  order  subgroups\n";
  for (int k = 1; k <= lt.depth(); ++k)
    os << std::right << std::setw(5) << k << "  " << std::setw(5) << lt.tower().level(k).order() << "  " << std::setw(9) << lt.count(k) << "\n";
  return os.str();
}

std::string audits_table(const std::vector<AuditResult>& rs) {
  std::ostringstream os;
  std::size_t w = 5;
  for (const auto& r : rs) w = std::max(w, r.name.size());
  for (const auto& r : rs) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << r.name << (r.passed ? "PASS" : "FAIL");
    os << "  levels " << r.levels.first << ".." << r.levels.second << "\n";
    for (const auto& d : r.details) {
      os << "    ";
      if (d.level) os << "k=" << d.level << " ";
      os << d.key << " = " << d.value << "\n";
    }
  }
  return os.str();
}

std::string lattice_dot(const LatticeTower& lt, const CBReport* cb, const std::vector<SolitaryCandidate>* solitary) {
  std::set<NodeRef> iso, cand;
  if (cb)
    for (int k = 1; k < lt.depth(); ++k)
      for (auto i : isolated_nodes(lt, k)) iso.insert({k, i});
  if (solitary)
    for (const auto& c : *solitary) cand.insert(c.node);

  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (int k = 1; k <= lt.depth(); ++k) {
    os << "  subgraph cluster_level" << k << " {\n    label=\"level " << k << " (order " << lt.tower().level(k).order() << ")\";\n";
    for (std::uint32_t i = 0; i < lt.count(k); ++i) {
      const NodeRef n{k, i};
      os << "    n" << k << "_" << i << " [label=\"" << lt.node(k, i).order() << "\"";
      if (iso.count(n)) os << ", shape=doublecircle";
      if (cand.count(n)) os << ", style=filled, fillcolor=gold";
      os << "];\n";
    }
    os << "  }\n";
  }
  for (int k = 2; k <= lt.depth(); ++k)
    for (std::uint32_t i = 0; i < lt.count(k); ++i) os << "  n" << k - 1 << "_" << lt.parent(k, i) << " -> n" << k << "_" << i << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace atlas
