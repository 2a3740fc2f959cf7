#include <algorithm>
#include <set>

#include "doctest.h"
#include "foliage/model.hpp"
#include "support.hpp"

using namespace foliage;

namespace {

bool has_code(const ValidationReport& r, const std::string& code) {
  return std::any_of(r.findings.begin(), r.findings.end(),
                     [&](const Finding& f) { return f.code == code; });
}

bool mentions(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.findings.begin(), r.findings.end(), [&](const Finding& f) {
    return f.message.find(text) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("parse fixtures") {
  auto s0 = parse_scenario(fixture_text("S0"));
  CHECK(s0.domains.size() == 1);
  CHECK(s0.orbits.size() == 1);

  auto s1 = parse_scenario(fixture_text("S1"));
  CHECK(s1.domains.size() == 5);
  CHECK(s1.orbits.size() == 2);
  std::set<std::string> leaves;
  for (const auto& d : s1.domains) {
    leaves.insert(d.left.begin(), d.left.end());
    leaves.insert(d.right.begin(), d.right.end());
  }
  CHECK(leaves.size() == 4);
}

TEST_CASE("fixtures round-trip byte-identically") {
  for (const char* name : {"S0", "S1", "S2", "S3", "S4", "S1p", "S3p"}) {
    CAPTURE(name);
    auto text = fixture_text(name);
    auto once = emit_scenario(parse_scenario(text));
    CHECK(once == text);
    CHECK(emit_scenario(parse_scenario(once)) == once);
  }
}

TEST_CASE("parse errors") {
  SUBCASE("unknown leaf in a path") {
    auto text = fixture_text("S1");
    auto pos = text.find("\"r1\",\n        \"D\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 4, "\"r9\"");
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("unknown leaf"), ParseError);
  }
  SUBCASE("syntax error position") {
    try {
      parse_scenario("{\n  \"domains\": [,\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 15);
    }
  }
  SUBCASE("unknown field") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"domains": [], "orbits": [], "extra": 1})"),
                         doctest::Contains("unknown field"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"domains": [{"id": "A", "left": [], "right": [], "up": []}], "orbits": []})"),
        doctest::Contains("unknown field 'up'"), ParseError);
  }
  SUBCASE("duplicate id") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"domains": [{"id": "A", "left": [], "right": []}, {"id": "A", "left": [], "right": []}], "orbits": []})"),
        doctest::Contains("duplicate id"), ParseError);
  }
  SUBCASE("missing field and wrong type") {
    CHECK_THROWS_AS(parse_scenario(R"({"domains": []})"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"domains": [{"id": 3, "left": [], "right": []}], "orbits": []})"),
                    ParseError);
  }
  SUBCASE("tie_rank defaults to zero") {
    auto s = parse_scenario(
        R"({"domains": [{"id": "A", "left": [], "right": []}], "orbits": [{"id": "O", "path": ["A"], "entry_cut": 0, "exit_cut": 0}]})");
    CHECK(s.orbits[0].tie_rank == 0);
  }
}

TEST_CASE("validate") {
  auto s1 = parse_scenario(fixture_text("S1"));
  CHECK(validate(s1).ok());
  for (const char* name : {"S0", "S2", "S3", "S4", "S1p", "S3p"}) {
    CHECK(validate(parse_scenario(fixture_text(name))).ok());
  }

  SUBCASE("cycle") {
    auto s = s1;
    s.domains[2].left.push_back("c");   // D
    s.domains[0].right.push_back("c");  // A1
    auto r = validate(s);
    CHECK(has_code(r, "forest-violation"));
    CHECK(mentions(r, "forest violation"));
  }
  SUBCASE("cut range") {
    auto s = s1;
    s.orbits[0].exit_cut = 5;
    auto r = validate(s);
    CHECK(mentions(r, "cut out of range"));
    CHECK(r.findings.size() == 1);
  }
  SUBCASE("leaf rules") {
    auto s = s1;
    s.domains[0].left.push_back("r1");
    CHECK(has_code(validate(s), "leaf-repeated"));
    s = s1;
    s.domains[1].left.push_back("r1");
    CHECK(has_code(validate(s), "leaf-multiple-left"));
    s = s1;
    s.domains[3].right.push_back("l2");
    CHECK(has_code(validate(s), "leaf-multiple-right"));
  }
  SUBCASE("path rules") {
    auto s = s1;
    s.orbits[0].path = {"A1", "r1"};
    CHECK(has_code(validate(s), "path-shape"));
    s = s1;
    s.orbits[0].path = {"A1", "r2", "D"};
    CHECK(has_code(validate(s), "not-an-edge"));
    s = s1;
    s.orbits[0].path = {"A1", "r1", "Q"};
    CHECK(has_code(validate(s), "unknown-domain"));
    s = s1;
    s.orbits[0].path = {"A1", "zz", "D"};
    CHECK(has_code(validate(s), "unknown-leaf"));
    s = s1;
    s.orbits[1].id = "O_a";
    CHECK(has_code(validate(s), "duplicate-id"));
    s = s1;
    s.domains[4].id = "";
    CHECK(has_code(validate(s), "empty-id"));
  }
  SUBCASE("revisit") {
    Scenario s;
    s.domains = {{"A", {"x"}, {}}, {"B", {}, {"x"}}};
    s.orbits = {{"O", {"A", "x", "B", "x", "A"}, 0, 0, 0}};
    CHECK(has_code(validate(s), "domain-revisited"));
  }
}

TEST_CASE("validation is order-independent") {
  auto s = parse_scenario(fixture_text("S2"));
  s.domains[2].left.push_back("c");
  s.domains[0].right.push_back("c");
  s.orbits[3].entry_cut = 9;
  s.orbits[1].path[1] = "rB";
  auto base = validate(s).findings;
  CHECK(base.size() >= 3);
  auto t = s;
  std::reverse(t.domains.begin(), t.domains.end());
  std::rotate(t.orbits.begin(), t.orbits.begin() + 1, t.orbits.end());
  CHECK(validate(t).findings == base);
}

TEST_CASE("validated scenario") {
  auto s = fixture("S1");
  CHECK(s.domain_count() == 5);
  int d = s.domain_index("D");
  CHECK(s.domain(d).left == std::vector<LeafId>{"l1", "l2"});
  const auto* l2 = s.leaf("l2");
  REQUIRE(l2);
  CHECK(l2->left_owner == d);
  CHECK(l2->left_pos == 1);
  CHECK(s.domain(l2->right_owner).id == "B2");
  CHECK(s.orbits_crossing("r1").size() == 1);
  CHECK(s.orbits_in_domain(d).size() == 2);
  CHECK(s.path_position(s.orbit_index("O_a"), d) == 1);
  CHECK_THROWS_AS(s.orbit_index("nope"), Error);

  auto bad = parse_scenario(fixture_text("S1"));
  bad.orbits[0].entry_cut = -1;
  CHECK_THROWS_AS(ValidatedScenario{bad}, ValidationError);
}
