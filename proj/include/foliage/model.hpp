#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace foliage {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line and column are 1-based; both are 0 when the error has no position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

using LeafId = std::string;
using DomainId = std::string;
using OrbitId = std::string;

struct SkeletonDomain {
  DomainId id;
  std::vector<LeafId> left;   // ≺-ascending
  std::vector<LeafId> right;  // ≺-ascending
};

struct Orbit {
  OrbitId id;
  // D1, φ1, D2, ..., Dm
  std::vector<std::string> path;
  int entry_cut = 0;
  int exit_cut = 0;
  int tie_rank = 0;
};

struct Scenario {
  std::vector<SkeletonDomain> domains;
  std::vector<Orbit> orbits;
};

// Reads the JSON scenario format. Checks syntax, field names, duplicate
// ids and that every path entry names a declared domain or leaf.
Scenario parse_scenario(std::string_view text);

// Canonical form: keys sorted, two-space indent, trailing newline.
std::string emit_scenario(const Scenario& s);

struct Finding {
  std::string code;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
  friend auto operator<=>(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;  // sorted
  bool ok() const { return findings.empty(); }
};

ValidationReport validate(const Scenario& s);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Finding> findings);
  const std::vector<Finding>& findings() const { return findings_; }

 private:
  std::vector<Finding> findings_;
};

// Placement of a leaf in the boundary lists. A leaf is an edge of the
// skeleton forest when both owners are set.
struct LeafPlacement {
  int left_owner = -1;  // domain whose left list holds the leaf
  int left_pos = -1;
  int right_owner = -1;
  int right_pos = -1;
};

// A scenario that passed validation, with lookup tables. Cheap to copy.
class ValidatedScenario {
 public:
  // Throws ValidationError when validate() reports findings.
  explicit ValidatedScenario(Scenario s);

  const Scenario& scenario() const;

  std::size_t domain_count() const;
  int domain_index(std::string_view id) const;  // throws Error when unknown
  int find_domain(std::string_view id) const;   // -1 when unknown
  const SkeletonDomain& domain(int d) const;

  // nullptr when the leaf appears in no boundary list
  const LeafPlacement* leaf(std::string_view id) const;

  std::size_t orbit_count() const;
  int orbit_index(std::string_view id) const;  // throws Error when unknown
  const Orbit& orbit(int o) const;
  const std::vector<int>& orbit_domains(int o) const;
  const std::vector<LeafId>& orbit_crossings(int o) const;
  // index of domain d in the orbit's domain sequence, or -1
  int path_position(int o, int d) const;

  // orbits in declaration order
  const std::vector<int>& orbits_crossing(std::string_view leaf) const;
  const std::vector<int>& orbits_in_domain(int d) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

}  // namespace foliage
