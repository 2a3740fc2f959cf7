#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "foliage/generator.hpp"
#include "foliage/model.hpp"
#include "foliage/realize.hpp"

namespace foliage {

// Property names in report order.
const std::vector<std::string>& property_names();

struct PropertyResult {
  std::string property;
  std::optional<std::string> failure;  // empty when the property holds
};

// Runs every property on one scenario. Exceptions count as failures.
std::vector<PropertyResult> check_scenario(const ValidatedScenario& s,
                                           PlanFault fault = PlanFault::None);

struct PropertyTally {
  std::string property;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct CaseFailure {
  std::string source;  // "seed 17" or a file name
  std::uint64_t seed = 0;
  std::string property;
  std::string detail;
  Scenario minimal;  // after deterministic shrinking
};

struct CheckReport {
  std::string header;
  std::size_t cases = 0;
  std::vector<PropertyTally> tallies;
  std::vector<CaseFailure> failures;  // sorted by seed, then property
  double elapsed_seconds = 0;  // never part of the formatted report

  bool ok() const { return failures.empty(); }
};

// Cases use seeds cfg.seed, cfg.seed + 1, ...
CheckReport check(const GeneratorConfig& cfg, std::size_t n_cases,
                  PlanFault fault = PlanFault::None);
CheckReport check_named(const std::vector<std::pair<std::string, Scenario>>& scenarios,
                        PlanFault fault = PlanFault::None);

// Drops orbits, then domains, while the property keeps failing.
Scenario shrink(const Scenario& s, const std::string& property, PlanFault fault);

std::string format_report(const CheckReport& r);
std::string format_report_json(const CheckReport& r);

}  // namespace foliage
