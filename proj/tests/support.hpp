#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "foliage/model.hpp"

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(FOLIAGE_FIXTURE_DIR) + "/" + name + ".json";
}

inline std::string fixture_text(const std::string& name) {
  return read_file(fixture_path(name));
}

inline foliage::ValidatedScenario fixture(const std::string& name) {
  return foliage::ValidatedScenario(foliage::parse_scenario(fixture_text(name)));
}
