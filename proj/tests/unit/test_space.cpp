#include <doctest.h>

#include <algorithm>

#include "atlas/error.hpp"
#include "atlas/group/constructions.hpp"
#include "atlas/group/operators.hpp"
#include "atlas/space/cb.hpp"
#include "atlas/space/lattice.hpp"
#include "support/oracles.hpp"

using namespace atlas;

namespace {

std::uint32_t node_of(const LatticeTower& lt, int k, const Subgroup& h) {
  auto i = lt.find(k, h.members());
  REQUIRE(i.has_value());
  return *i;
}

}  // namespace

TEST_CASE("lattice tower counts and maps") {
  const auto lt = LatticeTower::build(make_zp(2, 3));
  CHECK(lt.counts() == std::vector<std::size_t>{2, 3, 4});
  CHECK(LatticeTower::build(make_zpn(3, 2, 2)).count(1) == 6);
  const auto zpn = LatticeTower::build(make_zpn(3, 2, 2));
  for (std::uint32_t i = 0; i < zpn.count(1); ++i) CHECK_FALSE(zpn.children(1, i).empty());
  CHECK(LatticeTower::build(make_product({make_zp(2, 2), make_zp(3, 2)})).count(1) == 4);

  for (int k = 2; k <= lt.depth(); ++k)
    for (std::uint32_t i = 0; i < lt.count(k); ++i) {
      const auto p = lt.parent(k, i);
      CHECK(lt.tower().map(k - 1).image(lt.node(k, i).members()) == lt.node(k - 1, p).members());
      const auto ch = lt.children(k - 1, p);
      CHECK(std::find(ch.begin(), ch.end(), i) != ch.end());
    }
}

TEST_CASE("factor route matches group route") {
  const auto t = make_product({make_zp(2, 3), make_zp(3, 3)});
  const auto a = LatticeTower::build(t, LatticeRoute::Group);
  const auto b = LatticeTower::build(t, LatticeRoute::Factor);
  CHECK(b.factorized());
  REQUIRE(a.counts() == b.counts());
  CHECK(a.counts() == std::vector<std::size_t>{4, 9, 16});
  for (int k = 1; k <= 3; ++k)
    for (std::uint32_t i = 0; i < a.count(k); ++i) {
      CHECK(a.node(k, i) == b.node(k, i));
      if (k > 1) CHECK(a.parent(k, i) == b.parent(k, i));
      if (k < 3) CHECK(a.full_preimage_child(k, i) == b.full_preimage_child(k, i));
    }
  const auto mixed = make_product({make_dihedral2(2), make_zp(3, 2)});
  const auto c = LatticeTower::build(mixed, LatticeRoute::Group);
  const auto d = LatticeTower::build(mixed, LatticeRoute::Factor);
  REQUIRE(c.counts() == d.counts());
  for (int k = 1; k <= 2; ++k)
    for (std::uint32_t i = 0; i < c.count(k); ++i) CHECK(c.node(k, i) == d.node(k, i));
}

TEST_CASE("basic open fiber") {
  const auto t = make_zp(2, 3);
  const auto lt = LatticeTower::build(t);
  const auto triv = node_of(lt, 1, Subgroup::trivial(t.level(1)));
  CHECK(basic_open_fiber(lt, 1, triv, 0) == std::vector<std::uint32_t>{triv});
  // the kernel of Z/8 -> Z/2 is <2>, of order 4: three subgroups inside it
  const auto fib = basic_open_fiber(lt, 1, triv, 2);
  CHECK(fib.size() == 3);
  for (auto i : fib) CHECK(lt.node(3, i).order() <= 4);

  // KN = HN membership against the finite group, all towers and all nodes
  for (const auto& tw : {make_zp(3, 3), make_dihedral2(3), make_heisenberg(2, 2)}) {
    const auto l = LatticeTower::build(tw);
    for (int k = 1; k <= l.depth(); ++k)
      for (int j = 0; k + j <= l.depth(); ++j) {
        const auto pi = tw.composite(k, k + j);
        const Subgroup ker = pi.kernel();
        for (std::uint32_t h = 0; h < l.count(k); ++h) {
          const auto fiber = basic_open_fiber(l, k, h, j);
          const Subgroup hn = pi.preimage(l.node(k, h));
          for (std::uint32_t x = 0; x < l.count(k + j); ++x) {
            const bool member = product_set(l.node(k + j, x), ker) == hn;
            CHECK(member == std::binary_search(fiber.begin(), fiber.end(), x));
          }
          CHECK(std::binary_search(fiber.begin(), fiber.end(), j == 0 ? h : [&] {
            std::uint32_t y = h;
            for (int s = 0; s < j; ++s) y = l.full_preimage_child(k + s, y);
            return y;
          }()));
        }
      }
  }
  CHECK_THROWS_AS(basic_open_fiber(lt, 2, 0, 2), Error);
}

TEST_CASE("cb filtration zp") {
  const auto t = make_zp(2, 3);
  const auto lt = LatticeTower::build(t);
  const auto rep = cb_filtration(lt);
  // rank-1 survivors are the trivial nodes
  for (int k = 1; k <= 2; ++k) {
    REQUIRE(rep.survivors[1][static_cast<std::size_t>(k - 1)].size() == 1);
    CHECK(lt.node(k, rep.survivors[1][static_cast<std::size_t>(k - 1)][0]).is_trivial());
  }
  CHECK(rep.height.exact);
  CHECK(rep.height.value == 2);

  const auto cands = solitary_candidates(LatticeTower::build(make_zp(2, 4)), cb_filtration(LatticeTower::build(make_zp(2, 4))));
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].status == CertStatus::Certified);
}

TEST_CASE("cb filtration heights") {
  const auto prod = LatticeTower::build(make_product({make_zp(2, 4), make_zp(3, 4)}));
  const auto rp = cb_filtration(prod);
  CHECK(rp.height.value == 3);
  CHECK(rp.height.exact);

  const auto zpn = LatticeTower::build(make_zpn(3, 2, 2));
  const auto rz = cb_filtration(zpn);
  CHECK_FALSE(rz.apparent_isolated[0].empty());
  CHECK(solitary_candidates(zpn, rz).empty());
  CHECK(height_bound_audit(zpn.tower(), rz));
}

TEST_CASE("isolated nodes") {
  const auto t = make_zp(2, 4);
  const auto lt = LatticeTower::build(t);
  for (int k = 1; k < 4; ++k) {
    const auto iso = isolated_nodes(lt, k);
    CHECK(std::binary_search(iso.begin(), iso.end(), node_of(lt, k, Subgroup::whole(t.level(k)))));
  }
  const auto d = make_dihedral2(4);
  const auto ld = LatticeTower::build(d);
  for (int k = 1; k < 4; ++k) {
    const auto iso = isolated_nodes(ld, k);
    CHECK(std::binary_search(iso.begin(), iso.end(), node_of(ld, k, d.thread("Z", k))));
  }
  const auto z = make_zpn(3, 2, 2);
  const auto lz = LatticeTower::build(z);
  const auto iso = isolated_nodes(lz, 1);
  CHECK_FALSE(std::binary_search(iso.begin(), iso.end(), node_of(lz, 1, Subgroup::trivial(z.level(1)))));
  CHECK_THROWS_AS(isolated_nodes(lz, 2), Error);
}

TEST_CASE("density") {
  auto lt = LatticeTower::build(make_zp(3, 4));
  CHECK(density_check(lt).ok);
  const auto fp = lt.full_preimage_child(2, 1);
  lt.drop_child_edge_for_testing(2, 1, fp);
  const auto r = density_check(lt);
  CHECK_FALSE(r.ok);
  REQUIRE(r.counterexamples.size() == 1);
  CHECK(r.counterexamples[0] == NodeRef{2, 1});
}

TEST_CASE("solitary candidates") {
  const auto d = make_dihedral2(4);
  const auto ld = LatticeTower::build(d);
  const auto cd = solitary_candidates(ld, cb_filtration(ld));
  REQUIRE(cd.size() == 1);
  CHECK(ld.node(cd[0].node.level, cd[0].node.index).is_trivial());

  const auto p = make_pirim(2);
  const auto lp = LatticeTower::build(p);
  const auto cp = solitary_candidates(lp, cb_filtration(lp));
  bool has_h = false;
  for (const auto& c : cp) has_h = has_h || lp.node(c.node.level, c.node.index) == p.thread("H", c.node.level);
  CHECK(has_h);
}

TEST_CASE("conjugation audit") {
  for (const auto& t : {make_dihedral2(3), make_wilson(2), make_heisenberg(3, 1)}) {
    const auto lt = LatticeTower::build(t);
    CHECK(conjugation_audit(lt, cb_filtration(lt)).ok);
  }
}
