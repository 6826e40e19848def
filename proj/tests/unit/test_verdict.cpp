#include <doctest.h>

#include "atlas/group/constructions.hpp"
#include "atlas/space/verdict.hpp"

using namespace atlas;

namespace {

Verdict verdict_of(const Tower& t) {
  const auto lt = LatticeTower::build(t);
  return classify(t, lt, cb_filtration(lt));
}

const Evidence* find(const Verdict& v, const std::string& name) {
  for (const auto& e : v.evidence)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("zp classifies as omega + 1") {
  for (std::uint64_t p : {2, 3, 5}) {
    const auto v = verdict_of(make_zp(p, 4));
    CHECK(v.label() == "OmegaAlphaN(1,1)");
    CHECK(v.confidence == Confidence::Certified);
    CHECK_FALSE(v.conflict);
    REQUIRE(find(v, "trivial_solitary"));
    CHECK(find(v, "trivial_solitary")->holds);
  }
}

TEST_CASE("zp^2 classifies as Pelczynski") {
  const auto v = verdict_of(make_zpn(2, 2, 6));
  CHECK(v.tag == VerdictTag::Pelczynski);
  CHECK(v.confidence == Confidence::Certified);
  CHECK(verdict_of(make_zpn(3, 2, 3)).tag == VerdictTag::Pelczynski);
  CHECK(verdict_of(make_heisenberg(3, 2)).tag == VerdictTag::Pelczynski);
}

TEST_CASE("dihedral classifies as P + (omega + 1)") {
  for (int d : {4, 6}) {
    const auto v = verdict_of(make_dihedral2(d));
    CHECK(v.label() == "PelczynskiPlusOmegaN(1)");
    CHECK(v.confidence == Confidence::Certified);
  }
}

TEST_CASE("coprime product of omega + 1 factors") {
  const auto v = verdict_of(make_product({make_zp(2, 4), make_zp(3, 4)}));
  CHECK(v.label() == "OmegaAlphaN(2,1)");
  CHECK(v.confidence == Confidence::Certified);
  REQUIRE(find(v, "factor_1"));
  CHECK(find(v, "factor_1")->detail == "OmegaAlphaN(1,1)");
  // mixed: (omega + 1) x P has no certificate here
  CHECK(verdict_of(make_product({make_zp(2, 3), make_zpn(3, 2, 3)})).tag == VerdictTag::Undetermined);
}

TEST_CASE("finite towers are discrete") {
  const auto g = dihedral(4);
  std::vector<Elem> id(g.order());
  for (Elem x = 0; x < g.order(); ++x) id[x] = x;
  const auto t = make_custom({g, g, g}, {Homomorphism::make(g, g, id), Homomorphism::make(g, g, id)});
  const auto v = verdict_of(t);
  CHECK(v.tag == VerdictTag::FiniteDiscrete);
  CHECK(v.confidence == Confidence::Certified);
}

TEST_CASE("unsupported families stay undetermined") {
  for (const auto& t : {make_wilson(3), make_pirim(2)}) {
    const auto v = verdict_of(t);
    CHECK(v.tag == VerdictTag::Undetermined);
    CHECK(v.confidence == Confidence::EmpiricalOnly);
    CHECK_FALSE(v.conflict);
  }
}

TEST_CASE("stabilized rank-1 count") {
  const auto lt = LatticeTower::build(make_zp(2, 5));
  const auto sc = stabilized_rank1_count(cb_filtration(lt));
  CHECK(sc.stable);
  CHECK(sc.value == 1);
  CHECK(sc.window == 3);
  // depth 2 leaves one level: no window
  const auto l2 = LatticeTower::build(make_zp(2, 2));
  CHECK_FALSE(stabilized_rank1_count(cb_filtration(l2)).stable);
}

TEST_CASE("verdict labels") {
  Verdict v;
  CHECK(v.label() == "Undetermined");
  v.tag = VerdictTag::OmegaAlphaN;
  v.alpha = 3;
  v.n = 2;
  CHECK(v.label() == "OmegaAlphaN(3,2)");
  v.tag = VerdictTag::PelczynskiPlusOmegaN;
  CHECK(v.label() == "PelczynskiPlusOmegaN(2)");
  CHECK(to_string(VerdictTag::HeightTwoInfiniteSolitary) == "HeightTwoInfiniteSolitary");
}
