#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "atlas/error.hpp"
#include "atlas/group/constructions.hpp"
#include "atlas/report/report.hpp"

namespace atlas::cli {

namespace {

using nlohmann::json;

struct TowerOpts {
  std::string family;
  std::string spec_file;
  std::optional<std::uint64_t> p;
  std::optional<std::uint32_t> n;
  std::optional<int> depth;
  std::optional<int> max_rank;
  std::string output = "json";
  std::string out_path;
};

void add_tower_opts(CLI::App* sub, TowerOpts& o, bool with_n) {
  sub->add_option("--family", o.family, "built-in family: zp, zpn, heisenberg, dihedral2, pirim, wilson");
  sub->add_option("--spec-file", o.spec_file, "tower spec JSON document ('-' reads stdin)");
  sub->add_option("--p", o.p, "prime");
  if (with_n) sub->add_option("--n", o.n, "rank for zpn");
  sub->add_option("--depth", o.depth, "number of levels (overrides the spec)");
}

void add_output_opts(CLI::App* sub, TowerOpts& o, std::vector<std::string> formats) {
  sub->add_option("--output", o.output, "output format")->check(CLI::IsMember(formats));
  sub->add_option("--out", o.out_path, "write to this file instead of stdout");
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void drop_factor_depths(json& doc) {
  if (!doc.is_object() || !doc.contains("factors") || !doc["factors"].is_array()) return;
  for (auto& f : doc["factors"]) {
    if (f.is_object()) f.erase("depth");
    drop_factor_depths(f);
  }
}

bool has_tower(const TowerOpts& o) { return !o.family.empty() || !o.spec_file.empty(); }

TowerSpec tower_spec_from(const TowerOpts& o) {
  if (o.family.empty() == o.spec_file.empty()) fail(ErrorCode::SchemaViolation, "give exactly one of --family and --spec-file");
  json doc;
  if (!o.spec_file.empty()) {
    std::string text;
    if (o.spec_file == "-") {
      text = read_all(std::cin);
    } else {
      std::ifstream in(o.spec_file);
      if (!in) fail(ErrorCode::SchemaViolation, "cannot read spec file " + o.spec_file);
      text = read_all(in);
    }
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::SchemaViolation, o.spec_file + ": not valid JSON (" + e.what() + ")");
    }
    if (o.p && doc.is_object()) doc["p"] = *o.p;
    if (o.n && doc.is_object()) doc["n"] = *o.n;
  } else {
    doc["family"] = o.family;
    if (o.p) doc["p"] = *o.p;
    if (o.n) doc["n"] = *o.n;
  }
  if (o.depth && doc.is_object()) {
    doc["depth"] = *o.depth;
    drop_factor_depths(doc);
  }
  return parse_tower_spec(doc);
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) fail(ErrorCode::OutOfRange, "cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void emit_json(const ojson& j, const TowerOpts& o, std::ostream& out) {
  Sink s(o.out_path, out);
  *s << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const TowerOpts& o, std::ostream& out) {
  Sink s(o.out_path, out);
  *s << text;
}

int cmd_analyze(const TowerOpts& o, bool verdict_only, std::ostream& out) {
  const Analysis a = analyze(tower_spec_from(o), o.max_rank);
  if (o.output == "dot") {
    emit_text(lattice_dot(a.lattice, &a.cb, &a.solitary), o, out);
  } else if (o.output == "table") {
    emit_text(verdict_only ? verdict_table(a) : report_table(a), o, out);
  } else if (verdict_only) {
    ojson j;
    j["version"] = kReportSchemaVersion;
    j["tower"] = tower_json(a.tower(), a.spec);
    ojson h = height_json(a.cb.height);
    h["label"] = height_label(a.cb.height, a.cb.horizon);
    j["cb"] = {{"horizon", a.cb.horizon}, {"apparentHeight", h}};
    j["verdict"] = verdict_json(a.verdict);
    emit_json(j, o, out);
  } else {
    emit_json(report_json(a), o, out);
  }
  return a.verdict.conflict ? 2 : 0;
}

int cmd_lattice(const TowerOpts& o, std::ostream& out) {
  const auto lt = LatticeTower::build(build_tower(tower_spec_from(o)));
  if (o.output == "dot") {
    const auto cb = cb_filtration(lt, o.max_rank);
    const auto sol = solitary_candidates(lt, cb);
    emit_text(lattice_dot(lt, &cb, &sol), o, out);
  } else if (o.output == "table") {
    emit_text(lattice_table(lt), o, out);
  } else {
    ojson j;
    j["version"] = kReportSchemaVersion;
    j["tower"] = tower_json(lt.tower(), tower_spec_from(o));
    j["lattice"] = lattice_json(lt);
    emit_json(j, o, out);
  }
  return 0;
}

// Audits that take a tower; the rest run on their own inputs.
std::optional<AuditResult> audit_on_tower(const std::string& name, const Tower& t) {
  if (name == "frattini_stability") return frattini_stability_audit(t);
  if (name == "wilson_commutator") return wilson_commutator_audit(t);
  if (name == "pirim_irreducibility") return pirim_irreducibility_audit(t, t.depth());
  if (name == "solitary_criterion_hxz") return solitary_criterion_hxz_audit(t);
  if (name == "virtually_zp") return virtually_zp_audit(t);
  return std::nullopt;
}

int emit_audits(const std::vector<AuditResult>& rs, const TowerOpts& o, std::ostream& out) {
  if (o.output == "table") {
    emit_text(audits_table(rs), o, out);
  } else {
    ojson arr = ojson::array();
    for (const auto& r : rs) arr.push_back(audit_json(r));
    emit_json(arr, o, out);
  }
  const bool all_pass = std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.passed; });
  return all_pass ? 0 : 2;
}

int cmd_audit(const TowerOpts& o, const std::vector<std::string>& names, bool all, int n, std::ostream& out, std::ostream& err) {
  if (names.empty() == !all) fail(ErrorCode::SchemaViolation, "give --name <audit> or --all");
  const auto known = audit_names();
  std::vector<std::string> todo = all ? known : names;
  for (const auto& nm : todo)
    if (std::find(known.begin(), known.end(), nm) == known.end()) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      fail(ErrorCode::SchemaViolation, "unknown audit \"" + nm + "\"; known: " + list);
    }
  std::vector<AuditResult> rs;
  if (has_tower(o)) {
    const Tower t = build_tower(tower_spec_from(o));
    for (const auto& nm : todo) {
      try {
        if (auto r = audit_on_tower(nm, t)) rs.push_back(std::move(*r));
        else rs.push_back(run_named_audit(nm, n));
      } catch (const Error& e) {
        // with --all, audits that do not fit this tower are skipped
        if (!all || (e.code() != ErrorCode::WrongFamily && e.code() != ErrorCode::WrongShape && e.code() != ErrorCode::OutOfRange)) throw;
        err << "skipped " << nm << ": " << e.what() << "\n";
      }
    }
  } else {
    for (const auto& nm : todo) rs.push_back(run_named_audit(nm, n));
  }
  return emit_audits(rs, o, out);
}

std::vector<std::pair<std::string, std::pair<FiniteGroup, FiniteGroup>>> stock_pairs() {
  const auto s3 = permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  return {
      {"Z2 x Z2", {cyclic(2), cyclic(2)}},   {"Z4 x Z2", {cyclic(4), cyclic(2)}},     {"D4 x Z3", {dihedral(4), cyclic(3)}},
      {"Q8 x Z2", {quaternion8(), cyclic(2)}}, {"S3 x Z3", {s3, cyclic(3)}},            {"D4 x D4", {dihedral(4), dihedral(4)}},
      {"Q8 x D4", {quaternion8(), dihedral(4)}}, {"Z8 x Z4", {cyclic(8), cyclic(4)}},   {"D8 x Z8", {dihedral(8), cyclic(8)}},
  };
}

int cmd_goursat(const TowerOpts& o, const std::string& g1, const std::string& g2, std::ostream& out) {
  std::vector<AuditResult> rs;
  const auto tag = [](AuditResult r, const std::string& pair) {
    r.details.insert(r.details.begin(), {0, "pair", pair});
    return r;
  };
  if (!g1.empty() || !g2.empty()) {
    if (g1.empty() || g2.empty()) fail(ErrorCode::SchemaViolation, "give both --g1 and --g2");
    const auto parse = [](const std::string& text, const std::string& path) {
      try {
        return parse_group_literal(json::parse(text), path);
      } catch (const json::parse_error& e) {
        fail(ErrorCode::SchemaViolation, path + ": not valid JSON (" + e.what() + ")");
      }
    };
    rs.push_back(tag(goursat_full_audit(parse(g1, "--g1"), parse(g2, "--g2")), "g1 x g2"));
  } else {
    for (const auto& [name, pr] : stock_pairs()) rs.push_back(tag(goursat_full_audit(pr.first, pr.second), name));
  }
  return emit_audits(rs, o, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subgroup spaces of profinite groups: lattice towers, Cantor-Bendixson filtrations, verdicts and audits",
               "subgroup_atlas"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  TowerOpts o;
  std::vector<std::string> audit_list;
  bool audit_all = false;
  int audit_n = 40;
  std::string g1, g2;

  auto* analyze = app.add_subcommand("analyze", "full report: lattice, filtration, solitary candidates, verdict");
  add_tower_opts(analyze, o, true);
  analyze->add_option("--max-rank", o.max_rank, "highest filtration rank to compute");
  add_output_opts(analyze, o, {"json", "table", "dot"});

  auto* classify = app.add_subcommand("classify", "verdict and its evidence only");
  add_tower_opts(classify, o, true);
  classify->add_option("--max-rank", o.max_rank, "highest filtration rank to compute");
  add_output_opts(classify, o, {"json", "table"});

  auto* lattice = app.add_subcommand("lattice", "subgroup lattice tower");
  add_tower_opts(lattice, o, true);
  lattice->add_option("--max-rank", o.max_rank, "highest filtration rank (dot markup)");
  add_output_opts(lattice, o, {"json", "table", "dot"});

  auto* audit = app.add_subcommand("audit", "run casebook audits");
  add_tower_opts(audit, o, false);
  audit->add_option("--name,--audit-name", audit_list, "audit name (repeatable)");
  audit->add_flag("--all", audit_all, "run every audit");
  audit->add_option("--n", audit_n, "range for bn_recurrence")->check(CLI::Range(3, 90));
  add_output_opts(audit, o, {"json", "table"});

  auto* goursat = app.add_subcommand("goursat", "Goursat audit over a product of two groups (stock pairs by default)");
  goursat->add_option("--g1", g1, "left group literal, e.g. {\"kind\":\"dihedral\",\"n\":4}");
  goursat->add_option("--g2", g2, "right group literal");
  add_output_opts(goursat, o, {"json", "table"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return cmd_analyze(o, false, out);
    if (*classify) return cmd_analyze(o, true, out);
    if (*lattice) return cmd_lattice(o, out);
    if (*audit) return cmd_audit(o, audit_list, audit_all, audit_n, out, err);
    if (*goursat) return cmd_goursat(o, g1, g2, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace atlas::cli
