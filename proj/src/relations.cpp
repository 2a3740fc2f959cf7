#include "foliage/relations.hpp"

namespace foliage {

std::string to_string(Direction d) {
  switch (d) {
    case Direction::FirstLess: return "FirstLess";
    case Direction::SecondLess: return "SecondLess";
    case Direction::Equivalent: return "Equivalent";
    case Direction::Incomparable: return "Incomparable";
  }
  return "?";
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::L1: return "L1";
    case Clause::L2: return "L2";
    case Clause::L3: return "L3";
    case Clause::L4: return "L4";
    case Clause::R1: return "R1";
    case Clause::R2: return "R2";
    case Clause::R3: return "R3";
    case Clause::R4: return "R4";
    case Clause::Asymptotic: return "Asymptotic";
    case Clause::Disjoint: return "Disjoint";
  }
  return "?";
}

std::string to_string(const RelationVerdict& v) {
  return to_string(v.direction) + "(" + to_string(v.clause) + ")";
}

namespace {

// Shared domains form one contiguous chain, so the last shared domain is
// the last domain of a's path that b also visits.
int last_common(const ValidatedScenario& s, int a, int b) {
  const auto& p = s.orbit_domains(a);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (s.path_position(b, *it) >= 0) return *it;
  }
  return -1;
}

int first_common(const ValidatedScenario& s, int a, int b) {
  for (int d : s.orbit_domains(a)) {
    if (s.path_position(b, d) >= 0) return d;
  }
  return -1;
}

// How orbit o leaves domain d: through a left leaf at `index`, or by
// terminating there with exit cut `index`.
struct End {
  bool through;
  int index;
};

End left_end(const ValidatedScenario& s, int o, int d) {
  int pos = s.path_position(o, d);
  const auto& doms = s.orbit_domains(o);
  if (pos + 1 < static_cast<int>(doms.size())) {
    return {true, s.leaf(s.orbit_crossings(o)[pos])->left_pos};
  }
  return {false, s.orbit(o).exit_cut};
}

End right_end(const ValidatedScenario& s, int o, int d) {
  int pos = s.path_position(o, d);
  if (pos > 0) return {true, s.leaf(s.orbit_crossings(o)[pos - 1])->right_pos};
  return {false, s.orbit(o).entry_cut};
}

// Clause selection is identical on both sides; only the names differ.
RelationVerdict decide(End a, End b, Clause c1, Clause c2, Clause c3, Clause c4) {
  using D = Direction;
  if (a.through && b.through) {
    return {a.index < b.index ? D::FirstLess : D::SecondLess, c1};
  }
  if (a.through) return a.index < b.index ? RelationVerdict{D::FirstLess, c2}
                                          : RelationVerdict{D::SecondLess, c3};
  if (b.through) return b.index < a.index ? RelationVerdict{D::SecondLess, c2}
                                          : RelationVerdict{D::FirstLess, c3};
  if (a.index == b.index) return {D::Equivalent, c4};
  return {a.index < b.index ? D::FirstLess : D::SecondLess, c4};
}

bool plus_asym(const ValidatedScenario& s, int a, int b) {
  if (a == b) return true;
  return s.orbit_domains(a).back() == s.orbit_domains(b).back() &&
         s.orbit(a).exit_cut == s.orbit(b).exit_cut;
}

bool minus_asym(const ValidatedScenario& s, int a, int b) {
  if (a == b) return true;
  return s.orbit_domains(a).front() == s.orbit_domains(b).front() &&
         s.orbit(a).entry_cut == s.orbit(b).entry_cut;
}

RelationVerdict left_verdict(const ValidatedScenario& s, int a, int b) {
  if (a == b) return {Direction::Equivalent, Clause::Asymptotic};
  int d = last_common(s, a, b);
  if (d < 0) return {Direction::Incomparable, Clause::Disjoint};
  return decide(left_end(s, a, d), left_end(s, b, d), Clause::L1, Clause::L2,
                Clause::L3, Clause::L4);
}

RelationVerdict right_verdict(const ValidatedScenario& s, int a, int b) {
  if (a == b) return {Direction::Equivalent, Clause::Asymptotic};
  int d = first_common(s, a, b);
  if (d < 0) return {Direction::Incomparable, Clause::Disjoint};
  return decide(right_end(s, a, d), right_end(s, b, d), Clause::R1, Clause::R2,
                Clause::R3, Clause::R4);
}

bool strictly_first(const RelationVerdict& v, const char* what) {
  if (!v.strict()) {
    throw Error(std::string("internal error: ") + what + " comparison is not strict");
  }
  return v.direction == Direction::FirstLess;
}

bool standard_less_ix(const ValidatedScenario& s, int a, int b) {
  if (a == b) return false;
  if (!minus_asym(s, a, b)) return strictly_first(right_verdict(s, a, b), "right");
  if (!plus_asym(s, a, b)) return strictly_first(left_verdict(s, a, b), "left");
  const auto& oa = s.orbit(a);
  const auto& ob = s.orbit(b);
  if (oa.tie_rank == ob.tie_rank) {
    throw TieRankCollision("tie_rank collision: orbits '" + oa.id + "' and '" +
                           ob.id + "' are equivalent and share tie_rank " +
                           std::to_string(oa.tie_rank));
  }
  return oa.tie_rank < ob.tie_rank;
}

}  // namespace

bool plus_asymptotic(const ValidatedScenario& s, std::string_view o1, std::string_view o2) {
  return plus_asym(s, s.orbit_index(o1), s.orbit_index(o2));
}

bool minus_asymptotic(const ValidatedScenario& s, std::string_view o1, std::string_view o2) {
  return minus_asym(s, s.orbit_index(o1), s.orbit_index(o2));
}

RelationVerdict compare_left(const ValidatedScenario& s, std::string_view o1,
                             std::string_view o2) {
  return left_verdict(s, s.orbit_index(o1), s.orbit_index(o2));
}

RelationVerdict compare_right(const ValidatedScenario& s, std::string_view o1,
                              std::string_view o2) {
  return right_verdict(s, s.orbit_index(o1), s.orbit_index(o2));
}

bool weak_transverse(const ValidatedScenario& s, std::string_view o1, std::string_view o2) {
  int a = s.orbit_index(o1), b = s.orbit_index(o2);
  if (a == b || plus_asym(s, a, b) || minus_asym(s, a, b)) return false;
  auto l = left_verdict(s, a, b);
  auto r = right_verdict(s, a, b);
  return l.strict() && r.strict() && l.direction != r.direction;
}

bool classic_transverse(const ValidatedScenario& s, std::string_view o1,
                        std::string_view o2) {
  int a = s.orbit_index(o1), b = s.orbit_index(o2);
  if (a == b) return false;
  int last = last_common(s, a, b);
  if (last < 0) return false;
  int first = first_common(s, a, b);
  End la = left_end(s, a, last), lb = left_end(s, b, last);
  End ra = right_end(s, a, first), rb = right_end(s, b, first);
  if (!la.through || !lb.through || !ra.through || !rb.through) return false;
  if (la.index == lb.index || ra.index == rb.index) return false;
  return (la.index < lb.index) != (ra.index < rb.index);
}

std::vector<OrbitId> orbits_crossing(const ValidatedScenario& s, std::string_view leaf) {
  const auto& ix = s.orbits_crossing(leaf);
  if (ix.empty()) {
    throw Error("leaf '" + std::string(leaf) + "' is crossed by no orbit");
  }
  std::vector<OrbitId> out;
  for (int o : ix) out.push_back(s.orbit(o).id);
  return out;
}

bool standard_less(const ValidatedScenario& s, std::string_view o1, std::string_view o2) {
  return standard_less_ix(s, s.orbit_index(o1), s.orbit_index(o2));
}

bool adaptive_less(const ValidatedScenario& s, const MaxDomain& m, std::string_view o1, std::string_view o2) {
  int a = s.orbit_index(o1), b = s.orbit_index(o2);
  if (a == b) return false;
  const int last = s.domain_index(m.chain.back());
  End ea = left_end(s, a, last), eb = left_end(s, b, last);
  // the ~^D relation: terminating +∼ orbits, or a shared exit leaf
  bool same_class = (!ea.through && !eb.through && plus_asym(s, a, b)) ||
                    (ea.through && eb.through && ea.index == eb.index);
  if (same_class) return standard_less_ix(s, a, b);
  return strictly_first(left_verdict(s, a, b), "left");
}

OrderedOrbitList standard_order(const ValidatedScenario& s, std::string_view leaf) {
  auto items = orbits_crossing(s, leaf);
  return {std::string(leaf), sort_orbits(std::move(items), [&](const auto& x, const auto& y) {
            return standard_less(s, x, y);
          })};
}

OrderedOrbitList adaptive_order(const ValidatedScenario& s, const ReducedStructure& r,
                                std::string_view m) {
  const MaxDomain& md = r.at(m);
  return {md.id, sort_orbits(md.crossers, [&](const auto& x, const auto& y) {
            return adaptive_less(s, md, x, y);
          })};
}

}  // namespace foliage
