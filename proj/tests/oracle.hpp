#pragma once

// Reference versions of the sided preorders and the standard/adaptive
// orders, read directly off the clause definitions with crossed sets and
// boundaries as plain sets of leaves.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "foliage/model.hpp"

namespace oracle {

struct OrbitSets {
  std::set<std::string> domains;
  std::set<std::string> leaves;  // crossed leaves
  std::string alpha, omega;
  std::set<std::string> top_l, bot_l, top_r, bot_r;
  int entry_cut = 0, exit_cut = 0, tie_rank = 0;
};

class World {
 public:
  explicit World(const foliage::Scenario& s);

  const OrbitSets& orbit(const std::string& id) const { return orbits_.at(id); }

  // the boundary lists of C_O ∩ C_O′, empty when the sets are disjoint
  std::vector<std::string> left_of_intersection(const std::string& a, const std::string& b) const;
  std::vector<std::string> right_of_intersection(const std::string& a, const std::string& b) const;

  // clauses (L1..L4 / R1..R4) that witness a ≲ b
  std::set<std::string> left_clauses(const std::string& a, const std::string& b) const;
  std::set<std::string> right_clauses(const std::string& a, const std::string& b) const;
  bool le_left(const std::string& a, const std::string& b) const {
    return !left_clauses(a, b).empty();
  }
  bool le_right(const std::string& a, const std::string& b) const {
    return !right_clauses(a, b).empty();
  }

  bool plus(const std::string& a, const std::string& b) const;
  bool minus(const std::string& a, const std::string& b) const;

  // strict versions of ≤_φ and ≤_D by the case formulas
  bool standard_before(const std::string& a, const std::string& b) const;
  bool adaptive_before(const std::vector<std::string>& chain, const std::string& a,
                       const std::string& b) const;

  std::vector<std::string> crossing(const std::string& leaf) const;

 private:
  const foliage::SkeletonDomain& domain(const std::string& id) const { return domains_.at(id); }
  std::vector<std::string> intersection_side(const std::string& a, const std::string& b,
                                             bool left) const;

  std::map<std::string, foliage::SkeletonDomain> domains_;
  std::map<std::string, OrbitSets> orbits_;
  std::vector<std::string> orbit_order_;
};

// All permutations of `items` in which every earlier element is strictly
// before every later one.
template <class Before>
std::vector<std::vector<std::string>> consistent_orders(std::vector<std::string> items,
                                                        Before before) {
  std::vector<std::vector<std::string>> out;
  std::sort(items.begin(), items.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < items.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < items.size() && ok; ++j) {
        ok = before(items[i], items[j]);
      }
    }
    if (ok) out.push_back(items);
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

}  // namespace oracle
