#include "doctest.h"
#include "foliage/relations.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace foliage;
using Ids = std::vector<std::string>;

namespace {
const RelationVerdict FL_L1{Direction::FirstLess, Clause::L1};
}

TEST_CASE("asymptotic equivalences") {
  auto s3 = fixture("S3");
  auto s1 = fixture("S1");
  auto s2 = fixture("S2");
  CHECK(plus_asymptotic(s3, "O_x", "O_y"));
  CHECK_FALSE(plus_asymptotic(s1, "O_a", "O_b"));
  CHECK(plus_asymptotic(s1, "O_a", "O_a"));
  CHECK_FALSE(minus_asymptotic(s3, "O_x", "O_y"));
  CHECK_FALSE(minus_asymptotic(s2, "O1", "O4"));
  CHECK(minus_asymptotic(s2, "O4", "O4"));
  CHECK_THROWS_AS(plus_asymptotic(s1, "O_a", "nope"), Error);
}

TEST_CASE("sided comparisons on the fixtures") {
  auto s1 = fixture("S1");
  auto s2 = fixture("S2");
  auto s3 = fixture("S3");
  CHECK(compare_left(s1, "O_a", "O_b") == RelationVerdict{Direction::SecondLess, Clause::L1});
  CHECK(compare_left(s1, "O_b", "O_a") == FL_L1);
  CHECK(compare_left(s3, "O_x", "O_y") == RelationVerdict{Direction::Equivalent, Clause::L4});
  CHECK(compare_left(s2, "O1", "O3") == RelationVerdict{Direction::SecondLess, Clause::L3});
  CHECK(compare_left(s2, "O3", "O1") == RelationVerdict{Direction::FirstLess, Clause::L3});

  CHECK(compare_right(s1, "O_a", "O_b") == RelationVerdict{Direction::FirstLess, Clause::R1});
  CHECK(compare_right(s3, "O_x", "O_y") == RelationVerdict{Direction::FirstLess, Clause::R1});
  CHECK(compare_right(s2, "O2", "O4") == RelationVerdict{Direction::FirstLess, Clause::R2});
  CHECK(compare_right(s2, "O4", "O2") == RelationVerdict{Direction::SecondLess, Clause::R2});
  CHECK(compare_right(s2, "O1", "O2") == RelationVerdict{Direction::FirstLess, Clause::R3});

  CHECK(compare_left(s1, "O_a", "O_a") == RelationVerdict{Direction::Equivalent, Clause::Asymptotic});

  Scenario two;
  two.domains = {{"X", {}, {}}, {"Y", {}, {}}};
  two.orbits = {{"P", {"X"}, 0, 0, 0}, {"Q", {"Y"}, 0, 0, 1}};
  ValidatedScenario apart(two);
  CHECK(compare_left(apart, "P", "Q") == RelationVerdict{Direction::Incomparable, Clause::Disjoint});
  CHECK(compare_right(apart, "P", "Q") == RelationVerdict{Direction::Incomparable, Clause::Disjoint});
  CHECK_FALSE(weak_transverse(apart, "P", "Q"));

  CHECK(to_string(compare_left(s1, "O_a", "O_b")) == "SecondLess(L1)");
}

TEST_CASE("oracle agrees with the fixture verdicts") {
  for (const char* name : {"S0", "S1", "S2", "S3", "S4", "S1p", "S3p"}) {
    auto s = fixture(name);
    oracle::World w(s.scenario());
    for (const auto& a : s.scenario().orbits) {
      for (const auto& b : s.scenario().orbits) {
        if (a.id == b.id) continue;
        CAPTURE(name);
        CAPTURE(a.id);
        CAPTURE(b.id);
        for (bool left : {true, false}) {
          auto v = left ? compare_left(s, a.id, b.id) : compare_right(s, a.id, b.id);
          bool ab = left ? w.le_left(a.id, b.id) : w.le_right(a.id, b.id);
          bool ba = left ? w.le_left(b.id, a.id) : w.le_right(b.id, a.id);
          Direction expect = ab && ba   ? Direction::Equivalent
                             : ab       ? Direction::FirstLess
                             : ba       ? Direction::SecondLess
                                        : Direction::Incomparable;
          CHECK(v.direction == expect);
        }
      }
    }
  }
}

TEST_CASE("weak and classic transverse intersection") {
  auto s1 = fixture("S1");
  auto s2 = fixture("S2");
  auto s3 = fixture("S3");
  CHECK(weak_transverse(s1, "O_a", "O_b"));
  CHECK(weak_transverse(s1, "O_b", "O_a"));
  CHECK_FALSE(weak_transverse(s3, "O_x", "O_y"));
  CHECK_FALSE(weak_transverse(s2, "O1", "O2"));
  CHECK_FALSE(weak_transverse(s1, "O_a", "O_a"));

  CHECK(classic_transverse(s1, "O_a", "O_b"));
  CHECK_FALSE(classic_transverse(s2, "O1", "O2"));
  CHECK_FALSE(classic_transverse(s3, "O_x", "O_y"));
  CHECK(classic_transverse(fixture("S1p"), "O_a", "O_b"));
}

TEST_CASE("standard order") {
  CHECK(standard_order(fixture("S1"), "r1").order == Ids{"O_a"});
  CHECK(standard_order(fixture("S2"), "lB").order == Ids{"O2"});
  auto m1 = standard_order(fixture("S3p"), "m1");
  CHECK(m1.context == "m1");
  CHECK(m1.order == Ids{"O_x", "O_y"});
  CHECK(standard_order(fixture("S1p"), "g").order == Ids{"O_a", "O_b"});
  CHECK_THROWS_AS(standard_order(fixture("S3"), "m1"), Error);
}

TEST_CASE("adaptive order") {
  auto s1 = fixture("S1");
  CHECK(adaptive_order(s1, reduce(s1), "M:D").order == Ids{"O_b", "O_a"});
  auto s0 = fixture("S0");
  CHECK(adaptive_order(s0, reduce(s0), "M:D0").order == Ids{"O"});
  CHECK_THROWS_AS(adaptive_order(s0, reduce(s0), "M:none"), Error);
}

TEST_CASE("S2 adaptive order matches the brute-force oracle") {
  auto s2 = fixture("S2");
  oracle::World w(s2.scenario());
  auto orders = oracle::consistent_orders(
      {"O1", "O2", "O3", "O4"},
      [&](const std::string& a, const std::string& b) { return w.adaptive_before({"D"}, a, b); });
  REQUIRE(orders.size() == 1);
  CHECK(orders[0] == Ids{"O3", "O1", "O4", "O2"});
  CHECK(adaptive_order(s2, reduce(s2), "M:D").order == Ids{"O3", "O1", "O4", "O2"});
}

TEST_CASE("S2 standard orders match the brute-force oracle") {
  auto s2 = fixture("S2");
  oracle::World w(s2.scenario());
  for (const char* leaf : {"rA", "rB", "lA", "lB"}) {
    auto orders = oracle::consistent_orders(w.crossing(leaf), [&](const auto& a, const auto& b) {
      return w.standard_before(a, b);
    });
    REQUIRE(orders.size() == 1);
    CHECK(standard_order(s2, leaf).order == orders[0]);
  }
}

TEST_CASE("tie_rank collision surfaces when the tiebreak is needed") {
  auto s = parse_scenario(fixture_text("S3p"));
  s.orbits[0].path = {"A1", "r1", "D", "m1", "E"};
  s.orbits[1].path = {"A1", "r1", "D", "m1", "E"};
  s.orbits[1].tie_rank = s.orbits[0].tie_rank;
  ValidatedScenario v(s);
  CHECK_THROWS_AS(standard_order(v, "m1"), TieRankCollision);
  s.orbits[1].tie_rank = 7;
  CHECK(standard_order(ValidatedScenario(s), "m1").order == Ids{"O_x", "O_y"});
}

TEST_CASE("gap fill: backward-asymptotic orbits sharing an exit leaf") {
  // O1 and O2 start in A with the same entry cut and leave A through the
  // same leaf x, then split in B: -∼, not +∼, and ~^A. O3 keeps x critical.
  Scenario s;
  s.domains = {{"A", {"x"}, {}}, {"B", {"p", "q"}, {"x"}}, {"P", {}, {"p"}}, {"Q", {}, {"q"}}};
  s.orbits = {{"O1", {"A", "x", "B", "q", "Q"}, 0, 0, 0},
              {"O2", {"A", "x", "B", "p", "P"}, 0, 0, 1},
              {"O3", {"B"}, 0, 0, 2}};
  ValidatedScenario v(s);
  auto r = reduce(v);
  REQUIRE(r.find("M:A"));
  CHECK(standard_order(v, "x").order == Ids{"O2", "O1"});
  CHECK(adaptive_order(v, r, "M:A").order == Ids{"O2", "O1"});
  oracle::World w(s);
  auto orders = oracle::consistent_orders({"O1", "O2"}, [&](const auto& a, const auto& b) {
    return w.adaptive_before({"A"}, a, b);
  });
  REQUIRE(orders.size() == 1);
  CHECK(orders[0] == Ids{"O2", "O1"});
}
