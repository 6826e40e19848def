#include "atlas/casebook/audits.hpp"

#include <algorithm>
#include <sstream>

#include "atlas/error.hpp"
#include "atlas/group/constructions.hpp"
#include "atlas/group/operators.hpp"
#include "atlas/space/cb.hpp"
#include "atlas/space/lattice.hpp"

namespace atlas {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string int128_str(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  for (; v != 0; v /= 10) s.push_back(static_cast<char>('0' + static_cast<int>(neg ? -(v % 10) : v % 10)));
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

// Burnside: Phi(P) = P' P^p for a p-group. Other orders use the lattice.
Subgroup frattini_fast(const FiniteGroup& g) {
  const auto primes = g.primes();
  if (primes.size() != 1) return frattini(g);
  const Subgroup w = Subgroup::whole(g);
  ElementSet seed = commutator_subgroup(g).members();
  seed |= power_subgroup(w, primes.front()).members();
  return closure_of_set(g, seed);
}

// Phi(G1 x G2) = Phi(G1) x Phi(G2), so coprime products never need the
// (possibly implicit) product level itself.
std::uint64_t frattini_index(const Tower& t, int k) {
  if (t.factors().size() >= 2) {
    std::size_t total = 0;
    std::vector<std::uint64_t> all;
    for (const auto& f : t.factors()) {
      total += f.meta().primes.size();
      all.insert(all.end(), f.meta().primes.begin(), f.meta().primes.end());
    }
    std::sort(all.begin(), all.end());
    if (std::unique(all.begin(), all.end()) == all.end() && all.size() == total) {
      std::uint64_t ix = 1;
      for (const auto& f : t.factors()) ix *= frattini_index(f, k);
      return ix;
    }
  }
  return frattini_fast(t.level(k)).index();
}

// The left-factor node H_k x 1 of a two-factor product tower.
Subgroup left_factor_node(const Tower& t, int k) {
  const FiniteGroup& g = t.level(k);
  const FiniteGroup& l = t.factors()[0].level(k);
  const FiniteGroup& r = t.factors()[1].level(k);
  ElementSet s(g.order());
  for (Elem a = 0; a < l.order(); ++a) s.set(a * r.order() + r.identity());
  std::vector<Elem> gens;
  for (Elem x : l.generators()) gens.push_back(x * r.order() + r.identity());
  return Subgroup::trusted(g, std::move(s), std::move(gens));
}

bool is_hxz_shape(const Tower& t) {
  if (t.factors().size() != 2) return false;
  const auto& h = t.factors()[0];
  const auto& z = t.factors()[1];
  return z.meta().family == "zp" && h.meta().primes.size() == 1 && h.meta().primes == z.meta().primes;
}

}  // namespace

AuditResult frattini_stability_audit(const Tower& t) {
  AuditResult res;
  res.name = "frattini_stability";
  const int d = t.depth();
  res.levels = {std::max(1, d - 2), d};
  if (d < 3) {
    res.details.push_back({0, "note", "depth below 3"});
    return res;
  }
  std::vector<std::uint64_t> idx;
  for (int k = d - 2; k <= d; ++k) {
    const std::uint64_t ix = frattini_index(t, k);
    idx.push_back(ix);
    res.details.push_back({k, "frattini_index", str(ix)});
  }
  res.passed = idx[0] == idx[1] && idx[1] == idx[2];
  if (res.passed) res.details.push_back({0, "stable_index", str(idx[0])});
  return res;
}

AuditResult wilson_commutator_audit(const Tower& t) {
  if (t.meta().family != "wilson") fail(ErrorCode::WrongFamily, "wilson_commutator_audit needs a wilson tower");
  const int d = t.depth();
  if (d < 3) fail(ErrorCode::OutOfRange, "wilson_commutator_audit needs depth >= 3");
  AuditResult res;
  res.name = "wilson_commutator";
  res.levels = {1, d};
  bool ok = true;

  std::optional<std::uint64_t> top_index;
  for (int k = 2; k <= d; ++k) {
    const FiniteGroup& g = t.level(k);
    const std::uint64_t ix = commutator_subgroup(g).index();
    res.details.push_back({k, "G:G'", str(ix)});
    if (top_index && *top_index != ix) ok = false;
    top_index = ix;
  }

  const char* names[] = {"x1", "x2", "x1x2"};
  for (const char* name : names) {
    std::uint64_t prev = 0;
    for (int k = 1; k <= d; ++k) {
      const Elem x = t.element(name, k);
      const Subgroup m = closure(t.thread("A", k), std::span<const Elem>(&x, 1));
      const Subgroup md = derived_subgroup(m);
      const std::uint64_t ix = m.order() / md.order();
      res.details.push_back({k, std::string("<") + name + ",A>:<" + name + ",A>'", str(ix)});
      if (k > 1 && ix <= prev) ok = false;
      prev = ix;
      if (std::string(name) == "x1") {
        const FiniteGroup& g = t.level(k);
        const Elem seed[] = {g.mul(t.element("a2", k), t.element("a2", k)), g.mul(t.element("a3", k), t.element("a3", k))};
        const bool eq = md == closure(g, seed);
        res.details.push_back({k, "<x1,A>' = <a2^2,a3^2>", eq ? "yes" : "no"});
        ok = ok && eq;
      }
    }
  }

  for (int k = 1; k <= d; ++k) {
    const FiniteGroup& g = t.level(k);
    const Subgroup& a = t.thread("A", k);
    const bool phi_is_a = frattini_fast(g) == a;
    bool klein = a.index() == 4;
    for (Elem x = 0; x < g.order() && klein; ++x) klein = a.contains(g.mul(x, x));
    res.details.push_back({k, "Phi = A", phi_is_a ? "yes" : "no"});
    res.details.push_back({k, "G/A Klein four", klein ? "yes" : "no"});
    ok = ok && phi_is_a && klein;
  }
  res.passed = ok;
  return res;
}

AuditResult pirim_irreducibility_audit(const Tower& t, int r_max) {
  if (t.meta().family != "pirim") fail(ErrorCode::WrongFamily, "pirim_irreducibility_audit needs a pirim tower");
  AuditResult res;
  res.name = "pirim_irreducibility";
  const int k = t.depth();
  res.levels = {k, k};
  const int r_eff = std::min(r_max, k - 2);
  res.details.push_back({k, "r_effective", std::to_string(r_eff)});
  if (r_eff < 0) {
    res.details.push_back({k, "note", "A1 is the identity mod 3^k for every exponent; nothing to test"});
    return res;
  }
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) q *= 3;
  const Mat2 a1 = mat_pow_mod(pirim_matrix(), t.meta().pirim_m, q);
  res.details.push_back({k, "A1 mod 3^k", "[[" + str(static_cast<std::uint64_t>(a1[0][0])) + "," + str(static_cast<std::uint64_t>(a1[0][1])) +
                                               "],[" + str(static_cast<std::uint64_t>(a1[1][0])) + "," +
                                               str(static_cast<std::uint64_t>(a1[1][1])) + "]]"});

  // primitive vectors up to units: (1, y) and (3x, 1)
  std::vector<std::pair<std::int64_t, std::int64_t>> lines;
  for (std::int64_t y = 0; y < q; ++y) lines.push_back({1, y});
  for (std::int64_t x = 0; 3 * x < q; ++x) lines.push_back({3 * x, 1});
  res.details.push_back({k, "line_classes", str(lines.size())});

  bool ok = true;
  std::vector<Mat2> mats;
  Mat2 b = a1;
  for (int r = 0; r <= r_eff; ++r) {
    if (r > 0) b = mat_pow_mod(b, 3, q);
    mats.push_back(b);
    std::size_t fixed = 0;
    for (auto [v0, v1] : lines) {
      const std::int64_t w0 = (b[0][0] * v0 + b[0][1] * v1) % q;
      const std::int64_t w1 = (b[1][0] * v0 + b[1][1] * v1) % q;
      if (((v0 * w1 - v1 * w0) % q + q) % q == 0) ++fixed;
    }
    res.details.push_back({k, "invariant_lines r=" + std::to_string(r), str(fixed)});
    ok = ok && fixed == 0;
  }

  // submodules of M = (Z/3^k)^2 invariant under every tested power
  const auto qq = static_cast<std::uint32_t>(q);
  const FiniteGroup m = abelian({qq, qq});
  std::vector<std::string> found;
  for (const auto& h : all_subgroups(m)) {
    bool inv = true;
    for (const auto& mat : mats)
      h.members().for_each([&](Elem e) {
        if (!inv) return;
        const auto v0 = static_cast<std::int64_t>(e / qq), v1 = static_cast<std::int64_t>(e % qq);
        const std::int64_t w0 = (mat[0][0] * v0 + mat[0][1] * v1) % q;
        const std::int64_t w1 = (mat[1][0] * v0 + mat[1][1] * v1) % q;
        inv = h.contains(static_cast<Elem>(w0 * q + w1));
      });
    if (!inv) continue;
    // 3^j M, or sandwiched between 3^(j+1) M and 3^j M where A1 = I mod 3 acts trivially
    auto contains_multiple = [&](std::int64_t s) {
      for (std::int64_t v0 = 0; v0 < q; v0 += s)
        for (std::int64_t v1 = 0; v1 < q; v1 += s)
          if (!h.contains(static_cast<Elem>(v0 * q + v1))) return false;
      return true;
    };
    auto inside_multiple = [&](std::int64_t s) {
      bool in = true;
      h.members().for_each([&](Elem e) { in = in && (e / qq) % s == 0 && (e % qq) % s == 0; });
      return in;
    };
    std::string kind;
    auto name = [&](int j) { return j == k ? std::string("0") : (j == 0 ? std::string("M") : "3^" + std::to_string(j) + "M"); };
    for (std::int64_t s = 1, j = 0; j <= k && kind.empty(); ++j, s *= 3)
      if (inside_multiple(s) && contains_multiple(s)) kind = name(static_cast<int>(j));
    for (std::int64_t s = 1, j = 0; j < k && kind.empty(); ++j, s *= 3)
      if (inside_multiple(s) && contains_multiple(3 * s)) kind = name(static_cast<int>(j + 1)) + "<K<" + name(static_cast<int>(j));
    if (kind.empty()) {
      ok = false;
      kind = "unexpected of order " + str(h.order());
    }
    found.push_back(kind);
  }
  std::string joined;
  for (const auto& f : found) joined += (joined.empty() ? "" : ",") + f;
  res.details.push_back({k, "invariant_submodules", "{" + joined + "}"});
  res.details.push_back({0, "scope", "finite condition: no invariant line mod 3^k, not the full rational statement"});
  res.passed = ok;
  return res;
}

AuditResult bn_recurrence_audit(int n) {
  if (n < 3) fail(ErrorCode::OutOfRange, "bn_recurrence_audit needs N >= 3");
  AuditResult res;
  res.name = "bn_recurrence";
  res.levels = {1, n};
  const Mat2 a = pirim_matrix();
  // first row of A^n is (a_n, b_n)
  __int128 r0 = 1, r1 = 0;
  std::vector<__int128> b{0};
  bool ok = true;
  for (int i = 1; i <= n; ++i) {
    __int128 n0, n1, t0, t1;
    if (__builtin_mul_overflow(r0, static_cast<__int128>(a[0][0]), &t0) ||
        __builtin_mul_overflow(r1, static_cast<__int128>(a[1][0]), &t1) || __builtin_add_overflow(t0, t1, &n0) ||
        __builtin_mul_overflow(r0, static_cast<__int128>(a[0][1]), &t0) ||
        __builtin_mul_overflow(r1, static_cast<__int128>(a[1][1]), &t1) || __builtin_add_overflow(t0, t1, &n1)) {
      res.details.push_back({i, "overflow", "b_n exceeds 128-bit range"});
      return res;
    }
    r0 = n0;
    r1 = n1;
    b.push_back(r1);
    res.details.push_back({i, "b_n", int128_str(r1)});
    if (r1 <= 0) ok = false;
    if (i >= 3 && b[i] != 2 * b[i - 1] + 4 * b[i - 2]) {
      ok = false;
      res.details.push_back({i, "recurrence", "fails"});
    }
  }
  res.passed = ok;
  return res;
}

std::vector<std::uint64_t> abelianization_indices(const Tower& t) {
  std::vector<std::uint64_t> out;
  for (int k = 1; k <= t.depth(); ++k) out.push_back(commutator_subgroup(t.level(k)).index());
  return out;
}

AuditResult solitary_criterion_hxz_audit(const Tower& t) {
  if (!is_hxz_shape(t)) fail(ErrorCode::WrongShape, "expected a product H x Z_p over a single prime");
  AuditResult res;
  res.name = "solitary_criterion_hxz";
  const int d = t.depth();
  if (d < 2) fail(ErrorCode::OutOfRange, "solitary_criterion_hxz_audit needs depth >= 2");
  res.levels = {1, d - 1};
  const auto idx = abelianization_indices(t.factors()[0]);
  for (int k = 1; k <= d; ++k) res.details.push_back({k, "H:H'", str(idx[static_cast<std::size_t>(k - 1)])});

  const auto lt = LatticeTower::build(t, LatticeRoute::Group);
  const auto rep = cb_filtration(lt);
  const auto cands = solitary_candidates(lt, rep);
  bool ok = true;
  for (int k = 1; k < d; ++k) {
    const auto node = lt.find(k, left_factor_node(t, k).members());
    if (!node) fail(ErrorCode::InvalidGroup, "left factor node missing from the lattice");
    bool cand = false;
    if (rep.max_rank >= 1)
      for (const auto& n : rep.apparent_isolated[1]) cand = cand || (n.level == k && n.index == *node);
    for (const auto& c : cands) cand = cand || (c.node == NodeRef{k, *node});
    bool witness = true;
    for (int j = k; j < d; ++j) witness = witness && idx[static_cast<std::size_t>(j - 1)] == idx[static_cast<std::size_t>(j)];
    res.details.push_back({k, "H' open witness", witness ? "stable" : "growing"});
    res.details.push_back({k, "H x 1 candidate", cand ? "yes" : "no"});
    ok = ok && cand == witness;
  }
  res.details.push_back({0, "candidates", str(cands.size())});
  res.passed = ok;
  return res;
}

std::size_t virtually_zp_algebraic_count(const Tower& t) {
  const int d = t.depth();
  if (d < 2) fail(ErrorCode::OutOfRange, "needs depth >= 2");
  const int k = d - 1;
  const Subgroup& zk = t.thread("Z", k);
  const Subgroup& zd = t.thread("Z", d);
  const Subgroup ck = centralizer(zk);
  const Subgroup cd = centralizer(zd);
  const Homomorphism& pi = t.map(k);
  std::vector<Subgroup> lifts;
  for (const auto& l : all_subgroups(t.level(d)))
    if (l.is_subgroup_of(cd) && intersection(l, zd).is_trivial()) lifts.push_back(l);
  std::size_t n = 0;
  for (const auto& h : all_subgroups(t.level(k))) {
    if (!h.is_subgroup_of(ck) || !intersection(h, zk).is_trivial()) continue;
    for (const auto& l : lifts)
      if (l.order() == h.order() && pi.image(l.members()) == h.members()) {
        ++n;
        break;
      }
  }
  return n;
}

AuditResult virtually_zp_audit(const Tower& t) {
  if (!t.meta().flags.virtually_zp || !t.has_thread("Z")) fail(ErrorCode::WrongFamily, "virtually_zp_audit needs a virtually Z_p tower with a Z thread");
  AuditResult res;
  res.name = "virtually_zp";
  const int d = t.depth();
  res.levels = {1, d};
  const auto lt = LatticeTower::build(t);
  const auto rep = cb_filtration(lt);
  const auto cands = solitary_candidates(lt, rep);
  bool ok = true;

  auto in_cz = [&](NodeRef n) { return inside_centralizer_of_z(lt, rep, n); };
  for (const auto& c : cands) {
    const bool inside = in_cz(c.node);
    res.details.push_back({c.node.level, "candidate " + std::to_string(c.node.index) + " in C_G(Z), meets Z trivially", inside ? "yes" : "no"});
    ok = ok && inside;
  }
  // decided rank-1 nodes (levels <= D-2) inside C_G(Z) must have been pruned at rank 1
  if (rep.max_rank >= 1) {
    for (int k = 1; k <= d - 2; ++k)
      for (auto i : rep.survivors[1][static_cast<std::size_t>(k - 1)]) {
        if (!in_cz({k, i})) continue;
        if (rep.apparent_rank({k, i}) != 1) {
          res.details.push_back({k, "uncaught node", std::to_string(i)});
          ok = false;
        }
      }
  }
  const std::size_t n_alg = virtually_zp_algebraic_count(t);
  res.details.push_back({0, "candidates", str(cands.size())});
  res.details.push_back({0, "n_algebraic", str(n_alg)});
  res.passed = ok && !cands.empty();
  return res;
}

AuditResult goursat_full_audit(const FiniteGroup& g1, const FiniteGroup& g2) {
  if (static_cast<std::uint64_t>(g1.order()) * g2.order() > 128)
    fail(ErrorCode::CapExceeded, "goursat_full_audit is limited to products of order <= 128");
  AuditResult res;
  res.name = "goursat_full";
  const FiniteGroup g = direct_product(g1, g2);
  const auto subs = all_subgroups(g);
  std::size_t good = 0;
  for (const auto& h : subs) {
    const auto q = goursat(g1, g2, h);
    bool ok = goursat_reconstruct(q, g) == h;
    // (H n G1) x (H n G2) is normal in H, and the three quotients agree
    ElementSet nset(g.order());
    q.ker_left.members().for_each([&](Elem a) { q.ker_right.members().for_each([&](Elem b) { nset.set(a * g2.order() + b); }); });
    ok = ok && nset.is_subset_of(h.members());
    if (ok) {
      const Subgroup n = Subgroup::from_members(g, nset);
      for (Elem x : h.generators())
        ok = ok && conjugate(n, x) == n;
      const std::uint64_t ql = q.proj_left.order() / q.ker_left.order();
      const std::uint64_t qr = q.proj_right.order() / q.ker_right.order();
      ok = ok && ql == qr && ql == h.order() / n.order() && q.iso.size() == ql;
    }
    good += ok ? 1 : 0;
  }
  res.levels = {1, 1};
  res.details.push_back({0, "subgroups", str(subs.size())});
  res.details.push_back({0, "passing", str(good)});
  res.passed = good == subs.size();
  return res;
}

std::vector<std::string> audit_names() {
  return {"bn_recurrence", "frattini_stability", "goursat_full", "pirim_irreducibility", "solitary_criterion_hxz", "virtually_zp", "wilson_commutator"};
}

AuditResult run_named_audit(const std::string& name, int n) {
  if (name == "bn_recurrence") return bn_recurrence_audit(n);
  if (name == "frattini_stability") return frattini_stability_audit(make_wilson(3));
  if (name == "goursat_full") return goursat_full_audit(dihedral(4), cyclic(3));
  if (name == "pirim_irreducibility") return pirim_irreducibility_audit(make_pirim(2), 0);
  if (name == "solitary_criterion_hxz") return solitary_criterion_hxz_audit(make_product_shared_primes({make_wilson(3), make_zp(2, 3)}));
  if (name == "virtually_zp") return virtually_zp_audit(make_dihedral2(4));
  if (name == "wilson_commutator") return wilson_commutator_audit(make_wilson(3));
  fail(ErrorCode::OutOfRange, "unknown audit " + name);
}

}  // namespace atlas
