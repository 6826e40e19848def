#include <doctest.h>

#include <regex>

#include "atlas/config.hpp"
#include "atlas/error.hpp"
#include "atlas/report/report.hpp"

using namespace atlas;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_tower_spec_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return ErrorCode::InvalidGroup;
}

std::string message_of(const std::string& text) {
  try {
    parse_tower_spec_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::size_t count_matches(const std::string& s, const std::string& re) {
  const std::regex r(re);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), r), std::sregex_iterator()));
}

// Z/2 <- Z/4 <- Z/8 as an explicit document
const char* kCustomZ8 = R"({"family":"custom",
  "levels":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":4},{"kind":"cyclic","n":8}],
  "maps":[{"images":[0,1,0,1]},{"generatorImages":[1]}],
  "flags":{"abelian":true,"nilpotent":true,"virtuallyZp":true,"finitelyGenerated":true},
  "threads":{"Z":[[1],[1],[1]]}})";

}  // namespace

TEST_CASE("tower spec parsing") {
  const auto s = parse_tower_spec_text(R"({"family":"zp","p":2,"depth":3})");
  CHECK(s.family == "zp");
  CHECK(s.p == 2);
  CHECK(s.depth == 3);
  CHECK(build_tower(s).orders() == std::vector<std::uint32_t>{2, 4, 8});

  CHECK(code_of(R"({"family":"product","factors":[{"family":"zp","p":2,"depth":2},{"family":"zp","p":2,"depth":2}]})") ==
        ErrorCode::PrimeOverlap);
  CHECK(code_of(R"({"family":"wilson","depth":10})") == ErrorCode::CapExceeded);
  CHECK(code_of(R"({"family":"product","factors":[{"family":"zp","p":2,"depth":2},{"family":"zp","p":3,"depth":3}]})") ==
        ErrorCode::DepthMismatch);
  CHECK(code_of("not json") == ErrorCode::SchemaViolation);
  CHECK(code_of("[]") == ErrorCode::SchemaViolation);

  // every offending field is named by its JSON pointer
  const auto msg = message_of(R"({"family":"product","depth":2,"factors":[{"family":"zp","p":2},{"family":"zpn","p":6,"extra":1}]})");
  CHECK(msg.find("/factors/1/p") != std::string::npos);
  CHECK(msg.find("/factors/1/extra") != std::string::npos);
  CHECK(msg.find("/factors/1/n") != std::string::npos);
  CHECK(msg.find("/factors/0") == std::string::npos);
  CHECK(message_of(R"({"family":"zq"})").find("/family") != std::string::npos);
  CHECK(message_of(R"({"family":"wilson","p":3})").find("/p") != std::string::npos);
}

TEST_CASE("tower spec defaults and products") {
  CHECK(parse_tower_spec_text(R"({"family":"zp","p":3})").depth == 4);
  CHECK(parse_tower_spec_text(R"({"family":"heisenberg","p":2})").depth == 2);
  CHECK(parse_tower_spec_text(R"({"family":"wilson"})").depth == 3);
  CHECK(parse_tower_spec_text(R"({"family":"pirim"})").depth == 2);
  CHECK(parse_tower_spec_text(R"({"family":"dihedral2"})").depth == 4);
  CHECK(default_depth("zpn") == 4);

  // product depth fills in factors; nested products flatten
  const auto s = parse_tower_spec_text(
      R"({"family":"product","depth":2,"factors":[{"family":"zp","p":2},{"family":"product","factors":[{"family":"zp","p":3},{"family":"zp","p":5}]}]})");
  REQUIRE(s.factors.size() == 3);
  CHECK(s.primes == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(build_tower(s).orders() == std::vector<std::uint32_t>{30, 900});
  CHECK(estimated_top_order(s) == 900);
  CHECK(to_json(s).dump() ==
        R"({"family":"product","depth":2,"factors":[{"family":"zp","p":2,"depth":2},{"family":"zp","p":3,"depth":2},{"family":"zp","p":5,"depth":2}]})");
}

TEST_CASE("cap estimate follows the configured cap") {
  Limits l = limits();
  l.order_cap = 64;
  ScopedLimits scope(l);
  CHECK(code_of(R"({"family":"zp","p":2,"depth":7})") == ErrorCode::CapExceeded);
  CHECK(parse_tower_spec_text(R"({"family":"zp","p":2,"depth":6})").depth == 6);
}

TEST_CASE("custom towers") {
  const auto s = parse_tower_spec_text(kCustomZ8);
  CHECK(s.depth == 3);
  CHECK(s.primes == std::vector<std::uint64_t>{2});
  const auto t = build_tower(s);
  CHECK(t.orders() == std::vector<std::uint32_t>{2, 4, 8});
  CHECK(validate(t).ok());
  // same verdict as the built-in family at this depth
  const auto a = analyze(s);
  const auto b = analyze(parse_tower_spec_text(R"({"family":"zp","p":2,"depth":3})"));
  CHECK(a.verdict.label() == b.verdict.label());
  CHECK(a.lattice.counts() == b.lattice.counts());

  // truncation by depth
  auto doc = json::parse(kCustomZ8);
  doc["depth"] = 2;
  CHECK(build_tower(parse_tower_spec(doc)).depth() == 2);

  // a map that is not a homomorphism
  doc = json::parse(kCustomZ8);
  doc["maps"][0]["images"] = {0, 1, 1, 0};
  CHECK_THROWS_AS(build_tower(parse_tower_spec(doc)), Error);
  // wrong map count and a bad literal, both reported
  doc = json::parse(kCustomZ8);
  doc["maps"].erase(1);
  doc["levels"][0]["kind"] = "cyclc";
  const auto msg = message_of(doc.dump());
  CHECK(msg.find("/levels/0") != std::string::npos);
  CHECK(msg.find("/maps") != std::string::npos);
}

TEST_CASE("group literals") {
  CHECK(parse_group_literal(json::parse(R"({"kind":"dihedral","n":4})")).order() == 8);
  CHECK(parse_group_literal(json::parse(R"({"kind":"abelian","moduli":[2,2,3]})")).order() == 12);
  CHECK(parse_group_literal(json::parse(R"({"kind":"quaternion8"})")).order() == 8);
  CHECK(parse_group_literal(json::parse(R"({"kind":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]})")).order() == 6);
  CHECK(parse_group_literal(json::parse(R"({"kind":"matrix","modulus":3,"generators":[[[1,1],[0,1]]]})")).order() == 3);
  // Klein four by table, generators found automatically
  const auto v4 = parse_group_literal(json::parse(R"({"kind":"table","table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]})"));
  CHECK(v4.order() == 4);
  CHECK(v4.generators().size() == 2);
  CHECK_THROWS_AS(parse_group_literal(json::parse(R"({"kind":"table","table":[[0,1],[1,1]]})")), Error);
  CHECK_THROWS_AS(parse_group_literal(json::parse(R"({"kind":"cyclic"})")), Error);
}

TEST_CASE("json report schema") {
  const auto a = analyze(parse_tower_spec_text(R"({"family":"zp","p":3,"depth":4})"));
  const auto j = report_json(a);
  CHECK(j["version"] == kReportSchemaVersion);
  for (const char* k : {"family", "primes", "depth", "orders"}) CHECK(j["tower"].contains(k));
  CHECK(j["lattice"]["countsPerLevel"] == json::array({2, 3, 4, 5}));
  const auto& cb = j["cb"];
  CHECK(cb["horizon"] == 4);
  CHECK(cb["survivorsPerRank"].size() == static_cast<std::size_t>(a.cb.max_rank + 2));
  CHECK(cb["apparentHeight"]["value"] == 2);
  CHECK(cb["apparentHeight"]["exact"] == true);
  CHECK(cb["apparentHeight"]["label"] == "Exact(2)");
  CHECK(cb["isolatedCounts"].size() == 3);
  REQUIRE(cb["solitary"].size() == 1);
  CHECK(cb["solitary"][0]["certified"] == true);
  CHECK(cb["solitary"][0]["order"] == 1);
  CHECK(j["verdict"]["tag"] == "OmegaAlphaN");
  CHECK(j["verdict"]["params"]["alpha"] == 1);
  CHECK(j["verdict"]["params"]["n"] == 1);
  CHECK(j["verdict"]["confidence"] == "Certified");
  CHECK_FALSE(j["verdict"]["evidence"].empty());

  const auto d = report_json(analyze(parse_tower_spec_text(R"({"family":"dihedral2","depth":4})")));
  CHECK(d["cb"]["apparentHeight"]["exact"] == false);
  CHECK(d["cb"]["apparentHeight"]["label"] == "Unbounded(4)");
  CHECK(d["cb"]["apparentHeight"].contains("exhaustedAtRank"));
}

TEST_CASE("dot export") {
  const auto h = LatticeTower::build(make_heisenberg(3, 1));
  const auto dot = lattice_dot(h);
  CHECK(count_matches(dot, R"(n1_\d+ \[label)") == 19);
  CHECK(count_matches(dot, "subgraph cluster_") == 1);

  const auto a = analyze(parse_tower_spec_text(R"({"family":"dihedral2","depth":4})"));
  const auto d = lattice_dot(a.lattice, &a.cb, &a.solitary);
  CHECK(count_matches(d, "subgraph cluster_") == 4);
  // one edge per node below level 1
  CHECK(count_matches(d, " -> ") == 10 + 19 + 36);
  std::size_t iso = 0;
  for (auto c : a.isolated_counts) iso += c;
  CHECK(count_matches(d, "doublecircle") == iso);
  CHECK(count_matches(d, "style=filled") == a.solitary.size());
}

TEST_CASE("reports are deterministic across thread counts") {
  const auto spec = parse_tower_spec_text(R"({"family":"dihedral2","depth":4})");
  std::string serial, parallel;
  {
    Limits l = limits();
    l.threads = 1;
    ScopedLimits scope(l);
    serial = report_json(analyze(spec)).dump(2);
  }
  {
    Limits l = limits();
    l.threads = 4;
    ScopedLimits scope(l);
    parallel = report_json(analyze(spec)).dump(2);
  }
  CHECK(serial == parallel);
  CHECK(serial == report_json(analyze(spec)).dump(2));
}
