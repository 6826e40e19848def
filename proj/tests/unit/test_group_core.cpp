#include <doctest.h>

#include <numeric>

#include "atlas/config.hpp"
#include "atlas/error.hpp"
#include "atlas/group/constructions.hpp"
#include "atlas/group/operators.hpp"
#include "support/oracles.hpp"

using namespace atlas;

namespace {

oracle::Set as_set(const Subgroup& h) {
  const auto m = h.members().members();
  return {m.begin(), m.end()};
}

std::set<oracle::Set> as_sets(const std::vector<Subgroup>& subs) {
  std::set<oracle::Set> out;
  for (const auto& s : subs) out.insert(as_set(s));
  return out;
}

Subgroup sub(const FiniteGroup& g, std::initializer_list<Elem> seed) {
  std::vector<Elem> v(seed);
  return closure(g, v);
}

std::vector<FiniteGroup> small_zoo() {
  return {cyclic(1),          cyclic(8),         abelian({3, 3}),  dihedral(4),       quaternion8(),
          abelian({2, 2, 2}), abelian({4, 2}),   dihedral(3),      dihedral(6),       abelian({2, 6}),
          permutation_group(4, {{1, 0, 2, 3}, {1, 2, 3, 0}})};
}

}  // namespace

TEST_CASE("closure") {
  const auto z8 = cyclic(8);
  CHECK(closure(z8, std::vector<Elem>{}).order() == 1);
  const auto c = sub(z8, {2});
  CHECK(as_set(c) == oracle::Set{0, 2, 4, 6});

  const auto d4 = dihedral(4);  // r = 1, s = 4
  const auto k = sub(d4, {2, 4});
  CHECK(k.order() == 4);
  CHECK(as_set(k) == oracle::close(d4, {2, 4}));
  for (Elem a = 0; a < d4.order(); ++a)
    for (Elem b = 0; b < d4.order(); ++b) CHECK(as_set(sub(d4, {a, b})) == oracle::close(d4, {a, b}));
}

TEST_CASE("all_subgroups counts and canonical order") {
  CHECK(all_subgroups(cyclic(8)).size() == 4);
  CHECK(all_subgroups(abelian({3, 3})).size() == 6);
  CHECK(all_subgroups(quaternion8()).size() == 6);
  CHECK(all_subgroups(dihedral(4)).size() == 10);

  for (const auto& g : small_zoo()) {
    const auto subs = all_subgroups(g);
    CHECK(as_sets(subs) == oracle::subgroups_by_saturation(g));
    if (g.order() <= 12) CHECK(as_sets(subs) == oracle::subgroups_by_subsets(g));
    CHECK(std::is_sorted(subs.begin(), subs.end()));
    for (const auto& s : subs) {
      CHECK(g.order() % s.order() == 0);
      CHECK(closure(g, s.generators()) == s);
    }
  }
}

TEST_CASE("all_subgroups of a non-solvable group") {
  // A5 on 5 points: 59 subgroups
  const auto a5 = permutation_group(5, {{1, 2, 0, 3, 4}, {0, 1, 3, 4, 2}, {1, 0, 3, 2, 4}});
  CHECK(a5.order() == 60);
  CHECK_FALSE(is_solvable(a5));
  CHECK(all_subgroups(a5).size() == 59);
}

TEST_CASE("enumeration cap") {
  ScopedLimits lim([] {
    Limits l = limits();
    l.order_cap = 16;
    return l;
  }());
  CHECK_THROWS_AS(cyclic(32), Error);
  try {
    (void)abelian({4, 8});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("enumeration does not depend on thread count") {
  const auto g = abelian({4, 4, 2});
  std::vector<Subgroup> a, b;
  {
    Limits l = limits();
    l.threads = 1;
    ScopedLimits s(l);
    a = all_subgroups(g);
  }
  {
    Limits l = limits();
    l.threads = 4;
    ScopedLimits s(l);
    b = all_subgroups(g);
  }
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("frattini") {
  const auto z8 = cyclic(8);
  CHECK(as_set(frattini(z8)) == oracle::Set{0, 2, 4, 6});
  CHECK(frattini(abelian({3, 3})).is_trivial());
  CHECK(frattini(cyclic(1)).is_trivial());
  for (const auto& g : small_zoo()) CHECK(as_set(frattini(g)) == oracle::frattini(g));
}

TEST_CASE("frattini of a p-group is G' G^p") {
  for (const auto& g : {cyclic(8), abelian({4, 2}), dihedral(4), quaternion8(), abelian({9, 3}), dihedral(8)}) {
    const std::uint64_t p = g.primes().front();
    const Subgroup w = Subgroup::whole(g);
    const Subgroup expect = closure(commutator_subgroup(g), power_subgroup(w, p).generators());
    CHECK(frattini(g) == expect);
  }
}

TEST_CASE("characteristic operators match brute force") {
  for (const auto& g : small_zoo()) {
    CHECK(as_set(center(g)) == oracle::center(g));
    CHECK(as_set(commutator_subgroup(g)) == oracle::commutator_subgroup(g));
    for (const auto& h : all_subgroups(g)) {
      const auto hs = as_set(h);
      CHECK(as_set(normalizer(h)) == oracle::normalizer(g, hs));
      CHECK(as_set(centralizer(h)) == oracle::centralizer(g, hs));
      CHECK(as_set(core(h)) == oracle::core(g, hs));
      CHECK(is_normal(h) == (oracle::normalizer(g, hs).size() == g.order()));
      for (Elem x = 0; x < g.order(); ++x) CHECK(as_set(conjugate(h, x)) == oracle::conjugate(g, hs, x));
    }
  }
  CHECK(center(quaternion8()).order() == 2);
  const auto d4 = dihedral(4);
  CHECK(core(sub(d4, {4})).is_trivial());
}

TEST_CASE("product_set") {
  const auto z8 = cyclic(8);
  const auto h = sub(z8, {4});
  const auto n = sub(z8, {2});
  CHECK(product_set(h, n) == n);

  const auto d4 = dihedral(4);
  const auto refl = sub(d4, {4});
  const auto rot = sub(d4, {1});
  CHECK(product_set(refl, rot).is_whole());
  try {
    (void)product_set(rot, refl);
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormal);
  }
}

TEST_CASE("quotient") {
  const auto z8 = cyclic(8);
  auto [q, pi] = quotient(sub(z8, {4}));
  CHECK(q.order() == 4);
  CHECK(oracle::isomorphic_order_profile(q, cyclic(4)));
  CHECK(pi.surjective());
  CHECK(oracle::is_homomorphism(z8, q, std::vector<Elem>(pi.map().begin(), pi.map().end())));

  const auto d4 = dihedral(4);
  auto [k, pk] = quotient(center(d4));
  CHECK(oracle::isomorphic_order_profile(k, abelian({2, 2})));
  CHECK(pk.kernel() == center(d4));

  auto [t, pt] = quotient(Subgroup::whole(d4));
  CHECK(t.order() == 1);

  try {
    (void)quotient(sub(d4, {4}));
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormal);
  }
}

TEST_CASE("direct_product") {
  const auto z2 = cyclic(2), z3 = cyclic(3);
  const auto z6 = direct_product(z2, z3);
  CHECK(oracle::isomorphic_order_profile(z6, cyclic(6)));
  CHECK(z6.mul(pair_index(z3, 1, 1), pair_index(z3, 1, 2)) == pair_index(z3, 0, 0));
  CHECK(all_subgroups(direct_product(z2, z2)).size() == 5);
  CHECK(all_subgroups(direct_product(cyclic(4), z3)).size() == 6);
  ScopedLimits lim([] {
    Limits l = limits();
    l.order_cap = 16;
    return l;
  }());
  try {
    (void)direct_product(cyclic(4), cyclic(5));
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("coprime splitting") {
  const std::vector<std::pair<FiniteGroup, FiniteGroup>> pairs = {
      {cyclic(4), cyclic(3)}, {dihedral(4), abelian({3, 3})}, {quaternion8(), cyclic(9)}, {cyclic(5), dihedral(4)}};
  for (const auto& [a, b] : pairs) {
    const auto p = direct_product(a, b);
    const auto subs = all_subgroups(p);
    CHECK(subs.size() == all_subgroups(a).size() * all_subgroups(b).size());
    for (const auto& h : subs) {
      const auto q = goursat(a, b, h);
      CHECK(q.iso.size() == 1);  // H = proj_left x proj_right
    }
  }
}

TEST_CASE("goursat round trip") {
  const auto z2 = cyclic(2);
  const auto v = direct_product(z2, z2);
  const auto diag = sub(v, {pair_index(z2, 1, 1)});
  const auto q = goursat(z2, z2, diag);
  CHECK(q.proj_left.is_whole());
  CHECK(q.ker_left.is_trivial());
  CHECK(q.iso == std::vector<std::pair<Elem, Elem>>{{0, 0}, {1, 1}});

  const auto z4 = cyclic(4);
  const auto left = sub(direct_product(z4, z2), {pair_index(z2, 1, 0)});
  const auto ql = goursat(z4, z2, left);
  CHECK(ql.proj_left.is_whole());
  CHECK(ql.ker_left.is_whole());
  CHECK(ql.proj_right.is_trivial());

  const auto z4z2 = direct_product(z4, z2);
  CHECK(all_subgroups(z4z2).size() == 8);

  const std::vector<std::pair<FiniteGroup, FiniteGroup>> pairs = {
      {z4, z2}, {z2, z2}, {dihedral(4), z2}, {quaternion8(), cyclic(4)}, {abelian({2, 2}), dihedral(3)},
      {cyclic(8), cyclic(8)}};
  for (const auto& [a, b] : pairs) {
    const auto p = direct_product(a, b);
    REQUIRE(p.order() <= 64);
    for (const auto& h : all_subgroups(p)) {
      const auto gq = goursat(a, b, h);
      CHECK(goursat_reconstruct(gq, p) == h);
      CHECK(gq.proj_left.order() / gq.ker_left.order() == gq.proj_right.order() / gq.ker_right.order());
      CHECK(gq.proj_left.is_subgroup_of(normalizer(gq.ker_left)));
      CHECK(gq.proj_right.is_subgroup_of(normalizer(gq.ker_right)));
    }
  }
}

TEST_CASE("homomorphism law checking") {
  const auto z8 = cyclic(8), z4 = cyclic(4);
  std::vector<Elem> f(8);
  for (Elem i = 0; i < 8; ++i) f[i] = i % 4;
  const auto h = Homomorphism::make(z8, z4, f);
  CHECK(h.surjective());
  CHECK(h.kernel().order() == 2);
  f[3] = 0;
  CHECK_THROWS_AS(Homomorphism::make(z8, z4, f), Error);
  CHECK(Homomorphism::unchecked(z8, z4, f).law_violation().has_value());
}

TEST_CASE("invalid tables are rejected") {
  // not associative: x*y = x - y mod 3
  std::vector<std::uint16_t> t(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[a * 3 + b] = static_cast<std::uint16_t>(((a - b) % 3 + 3) % 3);
  CHECK_THROWS_AS(FiniteGroup::from_table(3, t, {1}), Error);
  // generators that do not generate
  std::vector<std::uint16_t> z4(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) z4[a * 4 + b] = static_cast<std::uint16_t>((a + b) % 4);
  CHECK_THROWS_AS(FiniteGroup::from_table(4, z4, {2}), Error);
  CHECK_NOTHROW(FiniteGroup::from_table(4, z4, {1}));
}

TEST_CASE("matrix and permutation literals") {
  // upper unitriangular 3x3 over Z/3: Heisenberg group of order 27
  const auto h = matrix_group(3, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}});
  CHECK(h.order() == 27);
  CHECK(center(h).order() == 3);
  CHECK(nilpotency_class(h) == 2);
  const auto s4 = permutation_group(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(s4.order() == 24);
  CHECK(all_subgroups(s4).size() == 30);
  CHECK(is_solvable(s4));
  CHECK_FALSE(is_nilpotent(s4));
}

TEST_CASE("implicit products agree with tables") {
  const auto a = dihedral(4), b = abelian({3, 3});
  const auto t = direct_product(a, b);
  const auto i = FiniteGroup::implicit_product(a, b);
  REQUIRE(i.order() == t.order());
  for (Elem x = 0; x < t.order(); ++x) {
    CHECK(i.inv(x) == t.inv(x));
    for (Elem y = 0; y < t.order(); y += 7) CHECK(i.mul(x, y) == t.mul(x, y));
  }
  CHECK_THROWS_AS(all_subgroups(i), Error);
}
