#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foliage/model.hpp"

namespace foliage {

struct CrossedSet {
  OrbitId orbit;
  std::vector<DomainId> domains;
  std::vector<LeafId> crossings;
  DomainId alpha;
  DomainId omega;
};

CrossedSet crossed_set(const ValidatedScenario& s, std::string_view orbit);

struct CommonSubpath {
  DomainId first;
  DomainId last;
  std::vector<DomainId> chain;

  friend bool operator==(const CommonSubpath&, const CommonSubpath&) = default;
};

// Empty when the two orbits share no domain.
std::optional<CommonSubpath> common_subpath(const ValidatedScenario& s,
                                            std::string_view o1,
                                            std::string_view o2);

struct MaxDomain {
  std::string id;                // "M:" + chain ids joined by '+'
  std::vector<DomainId> chain;   // forward order
  std::vector<LeafId> left;      // left list of the last chain element
  std::vector<LeafId> right;     // right list of the first chain element
  std::vector<OrbitId> crossers; // declaration order
  // boundary leaves of inner chain elements that are neither merged nor
  // kept in left/right
  std::vector<LeafId> shed;
};

struct ForestEdge {
  std::string from;
  LeafId leaf;
  std::string to;
};

struct DomainRoles {
  std::vector<OrbitId> alpha;
  std::vector<OrbitId> omega;
  std::vector<OrbitId> in;
  std::vector<OrbitId> out;
};

class ReducedStructure {
 public:
  std::vector<MaxDomain> maxdomains;  // sorted by id
  std::vector<LeafId> critical;       // sorted
  std::vector<ForestEdge> forest_edges;  // sorted by (from, leaf)
  std::map<std::string, DomainRoles> roles;

  // nullptr when unknown
  const MaxDomain* find(std::string_view id) const;
  const MaxDomain& at(std::string_view id) const;  // throws Error
  // MaxDomain containing a skeleton domain, or empty when it was dropped
  std::string owner_of(const DomainId& d) const;
  // the MaxDomains an orbit passes through, in order
  std::vector<std::string> route_of(const ValidatedScenario& s, int orbit) const;

  std::map<DomainId, std::string> owner;
};

ReducedStructure reduce(const ValidatedScenario& s);

DomainRoles domain_roles(const ReducedStructure& r, std::string_view m);

}  // namespace foliage
