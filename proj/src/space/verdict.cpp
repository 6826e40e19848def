#include "atlas/space/verdict.hpp"

#include <algorithm>
#include <set>

#include "atlas/casebook/audits.hpp"

namespace atlas {

std::string_view to_string(VerdictTag t) {
  switch (t) {
    case VerdictTag::FiniteDiscrete: return "FiniteDiscrete";
    case VerdictTag::OmegaAlphaN: return "OmegaAlphaN";
    case VerdictTag::Cantor: return "Cantor";
    case VerdictTag::Pelczynski: return "Pelczynski";
    case VerdictTag::PelczynskiPlusOmegaN: return "PelczynskiPlusOmegaN";
    case VerdictTag::HeightTwoInfiniteSolitary: return "HeightTwoInfiniteSolitary";
    case VerdictTag::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string_view to_string(Confidence c) { return c == Confidence::Certified ? "Certified" : "EmpiricalOnly"; }

std::string Verdict::label() const {
  std::string s(to_string(tag));
  if (tag == VerdictTag::OmegaAlphaN) s += "(" + std::to_string(alpha) + "," + std::to_string(n) + ")";
  if (tag == VerdictTag::PelczynskiPlusOmegaN) s += "(" + std::to_string(n) + ")";
  return s;
}

StableCount stabilized_rank1_count(const CBReport& report) {
  StableCount sc;
  if (report.max_rank < 1) return sc;
  for (int k = 1; k <= report.horizon - 1; ++k) sc.per_level.push_back(report.survivors[1][static_cast<std::size_t>(k - 1)].size());
  sc.window = std::min<int>(3, static_cast<int>(sc.per_level.size()));
  if (sc.window < 2) return sc;
  const auto last = sc.per_level.back();
  sc.stable = std::all_of(sc.per_level.end() - sc.window, sc.per_level.end(), [&](auto c) { return c == last; });
  if (sc.stable) sc.value = last;
  return sc;
}

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string height_text(const ApparentHeight& h) {
  if (h.exact) return "exact " + std::to_string(h.value);
  return "unresolved: " + std::to_string(h.value) + " apparent, horizon exhausted at rank " + std::to_string(h.exhausted_at_rank);
}

}  // namespace

Verdict classify(const Tower& t, const LatticeTower& lt, const CBReport& report) {
  Verdict v;
  const TowerMeta& meta = t.meta();
  const ApparentHeight& h = report.height;
  auto ev = [&](std::string name, bool holds, std::string detail) { v.evidence.push_back({std::move(name), holds, std::move(detail)}); };
  auto settle = [&](VerdictTag tag, Confidence c, int alpha = 0, int n = 0) {
    v.tag = tag;
    v.confidence = c;
    v.alpha = alpha;
    v.n = n;
    return v;
  };
  auto conflict = [&](std::string why) {
    ev("conflict", true, std::move(why));
    v.conflict = true;
    return settle(VerdictTag::Undetermined, Confidence::EmpiricalOnly);
  };

  ev("cb_height", true, height_text(h));

  // (a) finite group
  const auto orders = t.orders();
  if (std::all_of(orders.begin(), orders.end(), [&](auto o) { return o == orders.front(); })) {
    ev("constant_orders", true, "every level has order " + std::to_string(orders.front()));
    return settle(VerdictTag::FiniteDiscrete, Confidence::Certified);
  }

  // (b) Frattini subgroup not open: no isolated points
  if (t.depth() >= 3) {
    const auto fa = frattini_stability_audit(t);
    std::string detail;
    for (const auto& d : fa.details)
      if (d.key == "frattini_index") detail += (detail.empty() ? "" : ",") + d.value;
    ev("frattini_stability", fa.passed, "indices [" + detail + "] over the last three levels");
    if (!fa.passed) {
      if (h.exact && h.value != 0) return conflict("isolated structure seen although the Frattini index grows");
      return settle(VerdictTag::Cantor, Confidence::EmpiricalOnly);
    }
  }

  const auto dens = density_check(lt);
  ev("density", dens.ok, std::to_string(dens.counterexamples.size()) + " nodes without an open witness");
  const auto cands = solitary_candidates(lt, report);
  std::size_t certified = 0;
  for (const auto& c : cands) certified += c.status == CertStatus::Certified;
  ev("solitary_candidates", true, std::to_string(cands.size()) + " found, " + std::to_string(certified) + " certified");

  // (c) nilpotent and virtually Z_p: omega n + 1
  if (meta.flags.virtually_zp && meta.flags.nilpotent) {
    ev("virtually_zp_nilpotent", true, "family is nilpotent and virtually Z_p");
    const bool trivial_solitary = std::any_of(cands.begin(), cands.end(), [&](const auto& c) {
      return c.status == CertStatus::Certified && lt.node(c.node.level, c.node.index).is_trivial();
    });
    ev("trivial_solitary", trivial_solitary, "1 is solitary exactly when G is virtually Z_p");
    const auto sc = stabilized_rank1_count(report);
    ev("rank1_count", sc.stable, join(sc.per_level) + ", window " + std::to_string(sc.window));
    if (!trivial_solitary) return conflict("trivial subgroup is not a certified solitary candidate");
    if (h.exact && h.value != 2) return conflict("height " + std::to_string(h.value) + " where omega n + 1 has height 2");
    if (!dens.ok) return conflict("density surrogate fails");
    if (!sc.stable || sc.value == 0) return settle(VerdictTag::Undetermined, Confidence::EmpiricalOnly);
    return settle(VerdictTag::OmegaAlphaN, Confidence::Certified, 1, static_cast<int>(sc.value));
  }

  // (d) coprime product of omega n + 1 factors
  if (t.factors().size() >= 2) {
    std::set<std::uint64_t> seen;
    std::size_t total = 0;
    for (const auto& f : t.factors()) {
      total += f.meta().primes.size();
      seen.insert(f.meta().primes.begin(), f.meta().primes.end());
    }
    if (seen.size() == total) {
      int alpha = 0, n = 1;
      bool all = true;
      for (std::size_t i = 0; i < t.factors().size(); ++i) {
        const Tower& f = t.factors()[i];
        const LatticeTower fl = lt.factorized() ? lt.factor_lattices()[i] : LatticeTower::build(f);
        const Verdict fv = classify(f, fl, cb_filtration(fl));
        const bool omega = fv.tag == VerdictTag::OmegaAlphaN;
        ev("factor_" + std::to_string(i), omega, fv.label());
        if (omega) {
          alpha += fv.alpha;
          n *= fv.n;
        } else {
          all = false;
        }
      }
      if (all) {
        ev("coprime_product", true, "S(G1 x G2) = S(G1) x S(G2) for coprime orders");
        if (h.exact && h.value != alpha + 1) return conflict("height " + std::to_string(h.value) + " where the product predicts " + std::to_string(alpha + 1));
        if (!dens.ok) return conflict("density surrogate fails");
        return settle(VerdictTag::OmegaAlphaN, Confidence::Certified, alpha, n);
      }
    }
  }

  // (e) finitely generated nilpotent pro-p of dimension > 1
  if (meta.primes.size() == 1 && meta.flags.nilpotent && meta.flags.finitely_generated && !meta.flags.virtually_zp &&
      meta.dim_estimate && *meta.dim_estimate > 1) {
    ev("fg_nilpotent_dim_gt_1", true, "dimension " + std::to_string(*meta.dim_estimate));
    if (!cands.empty()) return conflict("solitary candidates present");
    if (!dens.ok) return conflict("density surrogate fails");
    if (h.exact && h.value != 1) return conflict("height " + std::to_string(h.value) + " where Pelczynski space has height 1");
    return settle(VerdictTag::Pelczynski, Confidence::Certified);
  }

  // (f) open Z_p with trivial expected center: P + (omega n + 1), n = |S(C_G(Z))'|
  if (meta.flags.virtually_zp && meta.flags.center_trivial_expected && t.has_thread("Z") && t.depth() >= 2) {
    const auto va = virtually_zp_audit(t);
    const std::size_t n_alg = virtually_zp_algebraic_count(t);
    ev("virtually_zp_audit", va.passed, "candidates inside C_G(Z) meeting Z trivially");
    ev("n_algebraic", n_alg == cands.size(), std::to_string(n_alg) + " algebraic, " + std::to_string(cands.size()) + " candidates");
    if (!va.passed) return conflict("virtually_zp_audit fails");
    if (n_alg != cands.size() || n_alg == 0) return conflict("candidate count differs from the centralizer count");
    if (!dens.ok) return conflict("density surrogate fails");
    if (h.exact && h.value != 2) return conflict("height " + std::to_string(h.value) + " where P + (omega n + 1) has height 2");
    return settle(VerdictTag::PelczynskiPlusOmegaN, Confidence::Certified, 0, static_cast<int>(n_alg));
  }

  // (g) certified solitary subgroups multiplying with depth
  if (certified > 0 && t.depth() >= 3) {
    const auto lt2 = LatticeTower::build(t.truncated(t.depth() - 1));
    std::size_t before = 0;
    for (const auto& c : solitary_candidates(lt2, cb_filtration(lt2))) before += c.status == CertStatus::Certified;
    ev("certified_growth", certified > before, std::to_string(before) + " -> " + std::to_string(certified));
    if (certified > before) return settle(VerdictTag::HeightTwoInfiniteSolitary, Confidence::EmpiricalOnly);
  }

  ev("no_certificate", true, "no algebraic criterion applies");
  return settle(VerdictTag::Undetermined, Confidence::EmpiricalOnly);
}

}  // namespace atlas
