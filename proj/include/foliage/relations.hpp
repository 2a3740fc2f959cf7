#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "foliage/decompose.hpp"
#include "foliage/model.hpp"

namespace foliage {

enum class Direction { FirstLess, SecondLess, Equivalent, Incomparable };
enum class Clause { L1, L2, L3, L4, R1, R2, R3, R4, Asymptotic, Disjoint };

struct RelationVerdict {
  Direction direction;
  Clause clause;

  bool strict() const {
    return direction == Direction::FirstLess || direction == Direction::SecondLess;
  }
  friend bool operator==(const RelationVerdict&, const RelationVerdict&) = default;
};

std::string to_string(Direction d);
std::string to_string(Clause c);
// e.g. "SecondLess(L1)"
std::string to_string(const RelationVerdict& v);

// Thrown when two orbits need the tie_rank tiebreak and share the rank.
class TieRankCollision : public Error {
 public:
  using Error::Error;
};

struct OrderedOrbitList {
  std::string context;  // leaf id or MaxDomain id
  std::vector<OrbitId> order;
};

bool plus_asymptotic(const ValidatedScenario& s, std::string_view o1, std::string_view o2);
bool minus_asymptotic(const ValidatedScenario& s, std::string_view o1, std::string_view o2);

RelationVerdict compare_left(const ValidatedScenario& s, std::string_view o1,
                             std::string_view o2);
RelationVerdict compare_right(const ValidatedScenario& s, std::string_view o1,
                              std::string_view o2);

bool weak_transverse(const ValidatedScenario& s, std::string_view o1, std::string_view o2);
bool classic_transverse(const ValidatedScenario& s, std::string_view o1,
                        std::string_view o2);

// Orbits crossing a leaf, declaration order. Throws Error when none do.
std::vector<OrbitId> orbits_crossing(const ValidatedScenario& s, std::string_view leaf);

// Strict comparators behind the orders below. Each returns true when o1
// comes strictly before o2; o1 == o2 gives false.
bool standard_less(const ValidatedScenario& s, std::string_view o1, std::string_view o2);
bool adaptive_less(const ValidatedScenario& s, const MaxDomain& m, std::string_view o1, std::string_view o2);

OrderedOrbitList standard_order(const ValidatedScenario& s, std::string_view leaf);
OrderedOrbitList adaptive_order(const ValidatedScenario& s, const ReducedStructure& r,
                                std::string_view m);

// Insertion sort under a strict comparator. Unlike std::sort it stays
// well defined when the comparator is broken, which the checks rely on.
template <class Less>
std::vector<OrbitId> sort_orbits(std::vector<OrbitId> items, Less less) {
  for (std::size_t i = 1; i < items.size(); ++i) {
    for (std::size_t j = i; j > 0 && less(items[j], items[j - 1]); --j) {
      std::swap(items[j], items[j - 1]);
    }
  }
  return items;
}

}  // namespace foliage
