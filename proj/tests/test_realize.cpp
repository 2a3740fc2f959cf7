#include "doctest.h"
#include "foliage/geometry.hpp"
#include "foliage/realize.hpp"
#include "support.hpp"

using namespace foliage;
using Ids = std::vector<std::string>;

namespace {

std::string ends_text(const BoundaryOrder& b) {
  std::string out;
  for (const auto& e : b.ends) {
    out += (out.empty() ? "" : " ") + e.orbit + (e.kind == EndKind::Backward ? "-" : "+");
  }
  return out;
}

BoundaryOrder order_of(const Ids& orbits, const std::string& text) {
  BoundaryOrder b;
  b.orbits = orbits;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    EndKind k = tok.back() == '-' ? EndKind::Backward : EndKind::Forward;
    tok.pop_back();
    b.ends.push_back({tok, k});
  }
  b.component_starts = {0};
  return b;
}

}  // namespace

TEST_CASE("port plans") {
  auto s1 = fixture("S1");
  auto r1 = reduce(s1);
  auto p = port_plan(s1, r1, "M:D");
  CHECK(p.entry_seq == Ids{"O_a", "O_b"});
  CHECK(p.exit_seq == Ids{"O_b", "O_a"});

  auto s3 = fixture("S3");
  auto p3 = port_plan(s3, reduce(s3), "M:D");
  CHECK(p3.entry_seq == Ids{"O_x", "O_y"});
  CHECK(p3.exit_seq == Ids{"O_x", "O_y"});

  auto s0 = fixture("S0");
  auto p0 = port_plans(s0, reduce(s0));
  REQUIRE(p0.size() == 1);
  CHECK(p0.begin()->second.entry_seq == Ids{"O"});

  auto faulty = port_plan(s1, r1, "M:D", PlanFault::ExitLikeEntry);
  CHECK(faulty.exit_seq == faulty.entry_seq);
  CHECK_THROWS_AS(port_plan(s1, r1, "M:nope"), Error);
}

TEST_CASE("crossing matrices") {
  auto s1 = fixture("S1");
  auto c1 = crossing_matrix(s1, reduce(s1));
  CHECK(c1.get("O_a", "O_b") == 1);
  CHECK(c1.get("O_b", "O_a") == 1);
  CHECK(c1.get("O_a", "O_a") == 0);
  CHECK(c1.witness[c1.index("O_a") * 2 + c1.index("O_b")] == "M:D");
  CHECK(c1.same_counts(weak_matrix(s1)));

  auto s3 = fixture("S3");
  auto c3 = crossing_matrix(s3, reduce(s3));
  CHECK(c3.get("O_x", "O_y") == 0);

  auto s0 = fixture("S0");
  auto c0 = crossing_matrix(s0, reduce(s0));
  CHECK(c0.size() == 1);
  CHECK(c0.at(0, 0) == 0);

  auto s2 = fixture("S2");
  auto c2 = crossing_matrix(s2, reduce(s2));
  CHECK(c2.same_counts(weak_matrix(s2)));
  CHECK(c2.get("O1", "O3") == 1);
  CHECK(c2.get("O1", "O2") == 0);
}

TEST_CASE("boundary orders up to rotation") {
  auto s1 = fixture("S1");
  auto b1 = boundary_order(s1, reduce(s1));
  CHECK(same_up_to_rotation(b1, order_of({"O_a", "O_b"}, "O_a- O_b- O_a+ O_b+")));
  CHECK(same_up_to_rotation(b1, order_of({"O_a", "O_b"}, "O_b- O_a+ O_b+ O_a-")));
  CHECK_FALSE(same_up_to_rotation(b1, order_of({"O_a", "O_b"}, "O_a- O_b- O_b+ O_a+")));
  CHECK(interleaving_matrix(b1).get("O_a", "O_b") == 1);

  auto s3 = fixture("S3");
  auto b3 = boundary_order(s3, reduce(s3));
  CHECK(same_up_to_rotation(b3, order_of({"O_x", "O_y"}, "O_x- O_y- O_y+ O_x+")));
  CHECK(interleaving_matrix(b3).get("O_x", "O_y") == 0);

  auto s0 = fixture("S0");
  CHECK(ends_text(boundary_order(s0, reduce(s0))) == "O- O+");
}

TEST_CASE("boundary order of two components") {
  Scenario two;
  two.domains = {{"X", {}, {}}, {"Y", {}, {}}};
  two.orbits = {{"P", {"X"}, 0, 0, 0}, {"Q", {"Y"}, 0, 0, 1}};
  ValidatedScenario s(two);
  auto b = boundary_order(s, reduce(s));
  CHECK(ends_text(b) == "P- P+ Q- Q+");
  CHECK(b.component_starts == std::vector<std::size_t>{0, 2});
  CHECK(interleaving_matrix(b).get("P", "Q") == 0);
}

TEST_CASE("embedding of S1") {
  auto s = fixture("S1");
  auto r = reduce(s);
  auto e = embed(s, r, port_plans(s, r));
  CHECK(e.nodes.size() == 5);
  CHECK(e.edges.size() == 4);
  const auto& d = e.nodes[e.node_index("M:D")];
  REQUIRE(d.west.size() == 2);
  CHECK(d.west[0].kind == SlotKind::Link);
  CHECK(d.west[0].leaf == "r1");
  CHECK(d.east[0].leaf == "l1");
  CHECK(d.east[0].orbits == Ids{"O_b"});
  CHECK(e.routes.at("O_a").size() == 3);
  CHECK_THROWS_AS(e.node_index("M:nope"), Error);

  auto bad = port_plans(s, r);
  std::swap(bad["M:D"].entry_seq[0], bad["M:D"].entry_seq[1]);
  CHECK_THROWS_AS(embed(s, r, bad), Error);
}

TEST_CASE("one-sided orders") {
  auto s1p = fixture("S1p");
  CHECK(one_sided_order(s1p, "g").order == Ids{"O_b", "O_a"});
  auto s3p = fixture("S3p");
  CHECK(one_sided_order(s3p, "m1").order == Ids{"O_x", "O_y"});

  auto e = one_sided_embedding(s1p, reduce(s1p), "g");
  auto b = boundary_order(e);
  CHECK(b.ends.size() == 4);
  CHECK(interleaving_matrix(b).get("O_a", "O_b") == 0);
  auto pieces = route(layout(e));
  CHECK(exact_crossings(pieces).get("O_a", "O_b") == 0);
}
