#pragma once

#include <cstdint>
#include <string>

#include "foliage/model.hpp"

namespace foliage {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n), n > 0
  bool chance(std::uint64_t num, std::uint64_t den);

 private:
  std::uint64_t state_;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int max_domains = 10;
  int max_orbits = 8;
  int max_boundary = 4;  // per side; 0 gives isolated domains
  // probability of reusing a domain of an earlier orbit and of extreme cuts
  std::uint64_t bias_num = 1;
  std::uint64_t bias_den = 2;
};

// "p/q" or an integer 0 or 1. Throws Error otherwise.
void parse_weak_bias(std::string_view text, GeneratorConfig& cfg);
std::string weak_bias_text(const GeneratorConfig& cfg);

// Throws Error on bad bounds or after 1000 rejected draws.
Scenario generate_scenario(const GeneratorConfig& cfg);

}  // namespace foliage
