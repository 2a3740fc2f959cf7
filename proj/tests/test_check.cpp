#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "foliage/check.hpp"
#include "foliage/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace foliage;

namespace {

int weak_pairs(const Scenario& s) {
  auto w = weak_matrix(ValidatedScenario(s));
  int n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) n += w.at(i, j);
  }
  return n;
}

struct Run {
  int status;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("splitmix64 reference stream") {
  // published reference values for seed 1234567
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("weak bias parsing") {
  GeneratorConfig cfg;
  parse_weak_bias("2/4", cfg);
  CHECK(weak_bias_text(cfg) == "1/2");
  parse_weak_bias("1", cfg);
  CHECK(weak_bias_text(cfg) == "1/1");
  CHECK_THROWS_AS(parse_weak_bias("3/2", cfg), Error);
  CHECK_THROWS_AS(parse_weak_bias("1/0", cfg), Error);
  CHECK_THROWS_AS(parse_weak_bias("half", cfg), Error);
}

TEST_CASE("degenerate bounds give a single-domain single-orbit scenario") {
  GeneratorConfig cfg;
  cfg.seed = 1;
  cfg.max_domains = 1;
  cfg.max_orbits = 1;
  cfg.max_boundary = 0;
  auto s = generate_scenario(cfg);
  auto s0 = fixture("S0").scenario();
  REQUIRE(s.domains.size() == 1);
  REQUIRE(s.orbits.size() == 1);
  CHECK(s.domains[0].left.empty());
  CHECK(s.domains[0].right.empty());
  CHECK(s.orbits[0].path == std::vector<std::string>{s.domains[0].id});
  CHECK(s.orbits[0].entry_cut == s0.orbits[0].entry_cut);
  CHECK(s.orbits[0].exit_cut == s0.orbits[0].exit_cut);
}

TEST_CASE("generator is deterministic and always valid") {
  GeneratorConfig cfg;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    cfg.seed = seed;
    auto a = generate_scenario(cfg);
    CHECK(validate(a).ok());
    CHECK(emit_scenario(a) == emit_scenario(generate_scenario(cfg)));
  }
  cfg.max_orbits = 0;
  CHECK_THROWS_AS(generate_scenario(cfg), Error);
}

TEST_CASE("generated corpus contains weak pairs") {
  GeneratorConfig cfg;
  int with_weak = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    cfg.seed = seed;
    if (weak_pairs(generate_scenario(cfg)) > 0) ++with_weak;
  }
  CHECK(with_weak == 35);
}

TEST_CASE("property suite passes on the fixtures") {
  std::vector<std::pair<std::string, Scenario>> named;
  for (const char* name : {"S0", "S1", "S2", "S3", "S4", "S1p", "S3p"}) {
    named.emplace_back(name, fixture(name).scenario());
  }
  auto report = check_named(named);
  CHECK(report.ok());
  CHECK(report.tallies.size() == property_names().size());
  for (const auto& t : report.tallies) CHECK(t.passed == named.size());
}

TEST_CASE("property suite passes on generated cases") {
  GeneratorConfig cfg;
  cfg.seed = 1000;
  auto report = check(cfg, 100);
  CHECK(report.ok());
  CHECK(format_report(report) == format_report(check(cfg, 100)));
}

TEST_CASE("corrupted exit comparator is caught and shrunk") {
  auto s1 = fixture("S1");
  bool caught = false;
  for (const auto& r : check_scenario(s1, PlanFault::ExitLikeEntry)) {
    if (r.property == "theorem-c-equivalence") caught = r.failure.has_value();
  }
  CHECK(caught);

  GeneratorConfig cfg;
  cfg.seed = 42;
  auto report = check(cfg, 200, PlanFault::ExitLikeEntry);
  CHECK_FALSE(report.ok());
  bool seen = false;
  for (const auto& f : report.failures) {
    if (f.property != "theorem-c-equivalence" || seen) continue;
    seen = true;
    CHECK(f.seed == 42);
    CHECK(f.minimal.orbits.size() <= 2);
    // the shrunk scenario still fails
    bool fails = false;
    for (const auto& r : check_scenario(ValidatedScenario(f.minimal), PlanFault::ExitLikeEntry)) {
      if (r.property == f.property) fails = r.failure.has_value();
    }
    CHECK(fails);
  }
  CHECK(seen);
  CHECK_THROWS_AS(shrink(s1.scenario(), "no-such-property", PlanFault::None), Error);
}

TEST_CASE("cli validate") {
  auto ok = cli({"validate", fixture_path("S1")});
  CHECK(ok.status == 0);
  CHECK(ok.out == "0 findings\n");

  auto broken = fixture("S1").scenario();
  broken.orbits[0].exit_cut = 5;
  auto path = std::string(FOLIAGE_BUILD_DIR) + "/broken.json";
  std::ofstream(path) << emit_scenario(broken);
  auto bad = cli({"validate", path});
  CHECK(bad.status == 1);
  CHECK(bad.out.find("cut-range") != std::string::npos);
  CHECK(bad.out.find("1 findings") != std::string::npos);

  std::ofstream(path) << "{\"domains\": [,]}";
  auto syntax = cli({"validate", path});
  CHECK(syntax.status == 1);
  CHECK(syntax.err.find("line 1") != std::string::npos);

  auto json = cli({"validate", "--json", fixture_path("S0")});
  CHECK(nlohmann::json::parse(json.out)["ok"] == true);
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).status == 2);
  CHECK(cli({"frobnicate"}).status == 2);
  CHECK(cli({"validate"}).status == 2);
  CHECK(cli({"validate", "/nonexistent/file.json"}).status == 2);
  CHECK(cli({"diagram", fixture_path("S1"), "--format", "pie"}).status == 2);
  CHECK(cli({"relations", fixture_path("S1"), "--pair", "O_a", "nope"}).status == 2);
  CHECK(cli({"check", "--weak-bias", "2"}).status == 2);
  CHECK(cli({"--help"}).status == 0);
}

TEST_CASE("cli relations and decompose") {
  auto pair = cli({"relations", fixture_path("S1"), "--pair", "O_a", "O_b"});
  CHECK(pair.status == 0);
  CHECK(pair.out == "L: SecondLess(L1); R: FirstLess(R1); weak: true\n");

  auto full = cli({"relations", fixture_path("S1")});
  CHECK(full.out.find("weak:") != std::string::npos);
  auto full_json = nlohmann::json::parse(cli({"relations", "--json", fixture_path("S1")}).out);
  CHECK(full_json["left"][0][1] == "SecondLess(L1)");
  CHECK(full_json["weak"][0][1] == true);

  auto dec = cli({"decompose", fixture_path("S2")});
  CHECK(dec.out.find("M:D: Oα={O1,O4} Oω={O3,O4} Oin={O2,O3} Oout={O1,O2}") != std::string::npos);
  auto dec_json = nlohmann::json::parse(cli({"decompose", "--json", fixture_path("S4")}).out);
  CHECK(dec_json["maxdomains"][0]["id"] == "M:D1+D2");
}

TEST_CASE("cli diagram") {
  auto m = cli({"diagram", fixture_path("S1")});
  CHECK(m.status == 0);
  CHECK(m.out.find("O_a x O_b in M:D") != std::string::npos);
  auto b = cli({"diagram", fixture_path("S0"), "--format", "boundary"});
  CHECK(b.out == "component 1: O- O+\n");

  auto svg = std::string(FOLIAGE_BUILD_DIR) + "/s1.svg";
  auto chord = std::string(FOLIAGE_BUILD_DIR) + "/s1-chord.svg";
  CHECK(cli({"diagram", fixture_path("S1"), "--svg", svg, "--chord", chord}).status == 0);
  CHECK(read_file(svg).find("<svg") != std::string::npos);
  CHECK(read_file(chord).find("viewBox=\"-1.300000") != std::string::npos);
}

TEST_CASE("cli generate and check honour FOLIAGE_SEED") {
  auto a = cli({"generate", "--seed", "7"});
  CHECK(a.status == 0);
  CHECK(validate(parse_scenario(a.out)).ok());
  setenv("FOLIAGE_SEED", "7", 1);
  auto b = cli({"generate", "--seed", "99"});
  unsetenv("FOLIAGE_SEED");
  CHECK(a.out == b.out);

  auto c1 = cli({"check", "--seed", "3", "--cases", "20"});
  auto c2 = cli({"check", "--seed", "3", "--cases", "20"});
  CHECK(c1.status == 0);
  CHECK(c1.out == c2.out);
  CHECK(c1.err.find("elapsed") != std::string::npos);
  CHECK(c1.out.find("elapsed") == std::string::npos);

  auto files = cli({"check", fixture_path("S1"), fixture_path("S2")});
  CHECK(files.status == 0);
  auto faulty = cli({"check", "--json", "--fault", "exit-like-entry", fixture_path("S1")});
  CHECK(faulty.status == 1);
  CHECK(nlohmann::json::parse(faulty.out)["failures"].size() > 0);
}
