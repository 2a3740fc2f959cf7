#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "foliage/decompose.hpp"
#include "foliage/model.hpp"
#include "foliage/relations.hpp"

namespace foliage {

struct PortPlan {
  std::string domain;
  std::vector<OrbitId> entry_seq;  // index 0 is topmost
  std::vector<OrbitId> exit_seq;
};

// Deliberate corruption of the exit comparator, used only to show that
// the checks catch a broken construction.
enum class PlanFault { None, ExitLikeEntry };

PortPlan port_plan(const ValidatedScenario& s, const ReducedStructure& r,
                   std::string_view m, PlanFault fault = PlanFault::None);
std::map<std::string, PortPlan> port_plans(const ValidatedScenario& s,
                                           const ReducedStructure& r,
                                           PlanFault fault = PlanFault::None);

// Symmetric matrix over orbits in declaration order.
struct CrossingMatrix {
  std::vector<OrbitId> orbits;
  std::vector<int> counts;            // row-major
  std::vector<std::string> witness;   // MaxDomain id, empty for none

  explicit CrossingMatrix(std::vector<OrbitId> ids = {});
  std::size_t size() const { return orbits.size(); }
  int at(std::size_t i, std::size_t j) const { return counts[i * size() + j]; }
  std::size_t index(std::string_view orbit) const;  // throws Error
  int get(std::string_view a, std::string_view b) const;
  void add(std::size_t i, std::size_t j, int n, const std::string& where);
  bool same_counts(const CrossingMatrix& other) const;
};

// Inversions between entry and exit sequences, summed over MaxDomains.
// No bound is enforced.
CrossingMatrix inversion_counts(const ValidatedScenario& s,
                                const std::map<std::string, PortPlan>& plans);
// As above from the regular plans; throws Error if a pair exceeds 1.
CrossingMatrix crossing_matrix(const ValidatedScenario& s, const ReducedStructure& r);

// 1 where weak_transverse holds.
CrossingMatrix weak_matrix(const ValidatedScenario& s);

// Linear extension of ≲_L on Orb(leaf), ties by tie_rank then id.
OrderedOrbitList one_sided_order(const ValidatedScenario& s, std::string_view leaf);
OrderedOrbitList one_sided_order_right(const ValidatedScenario& s, std::string_view leaf);

// Rotation system of the tree of boxes. Slots run top to bottom.
enum class SlotKind { Stub, Link, Tick };

struct Slot {
  SlotKind kind;
  LeafId leaf;                   // Link and Tick
  std::vector<OrbitId> orbits;   // one for Stub, the strands for Link
  std::size_t edge = 0;          // Link only
};

struct EmbeddedNode {
  std::string id;
  std::vector<Slot> west;  // entering side
  std::vector<Slot> east;  // leaving side
};

struct EmbeddedEdge {
  std::size_t from;
  std::size_t to;
  LeafId leaf;
  std::vector<OrbitId> strands;  // top to bottom
};

struct Embedding {
  std::vector<EmbeddedNode> nodes;  // sorted by id
  std::vector<EmbeddedEdge> edges;
  std::vector<OrbitId> orbits;
  std::map<OrbitId, std::vector<std::size_t>> routes;  // forward node order

  std::size_t node_index(std::string_view id) const;  // throws Error
};

// Throws Error when a plan does not fit the leaf/cut slots of its box or
// two plans disagree across a corridor.
Embedding embed(const ValidatedScenario& s, const ReducedStructure& r,
                const std::map<std::string, PortPlan>& plans);

// The part of the forest forward of `leaf`, carrying only Orb(leaf). The
// orbits start as stubs on the west side of the first box in
// one_sided_order, and every sequence follows the one-sided comparator.
Embedding one_sided_embedding(const ValidatedScenario& s, const ReducedStructure& r,
                              std::string_view leaf);

enum class EndKind { Backward, Forward };

struct BoundaryEnd {
  OrbitId orbit;
  EndKind kind;

  friend bool operator==(const BoundaryEnd&, const BoundaryEnd&) = default;
};

struct BoundaryOrder {
  std::vector<OrbitId> orbits;     // declaration order
  std::vector<BoundaryEnd> ends;   // cyclic
  // offsets into `ends` where each forest component's walk begins
  std::vector<std::size_t> component_starts;
};

BoundaryOrder boundary_order(const Embedding& e);
BoundaryOrder boundary_order(const ValidatedScenario& s, const ReducedStructure& r);

// 1 where the two orbits' ends alternate around the cycle.
CrossingMatrix interleaving_matrix(const BoundaryOrder& b);

// True when both have the same components and each component's walk in
// `b` is a rotation of the one in `a`.
bool same_up_to_rotation(const BoundaryOrder& a, const BoundaryOrder& b);

}  // namespace foliage
