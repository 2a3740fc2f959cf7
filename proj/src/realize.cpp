#include "foliage/realize.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace foliage {

namespace {

struct End {
  bool through;
  int index;  // leaf position when through, otherwise the cut
};

End entry_end(const ValidatedScenario& s, int o, int first) {
  int pos = s.path_position(o, first);
  if (pos > 0) return {true, s.leaf(s.orbit_crossings(o)[pos - 1])->right_pos};
  return {false, s.orbit(o).entry_cut};
}

End exit_end(const ValidatedScenario& s, int o, int last) {
  int pos = s.path_position(o, last);
  if (pos + 1 < static_cast<int>(s.orbit_domains(o).size())) {
    return {true, s.leaf(s.orbit_crossings(o)[pos])->left_pos};
  }
  return {false, s.orbit(o).exit_cut};
}

// Lays the orbits of one box side into slots: at each gap i the stubs
// with cut i, then leaf i as a corridor (or a bare tick). The resulting
// orbit sequence must be `order` itself.
std::vector<Slot> make_side(const std::string& node, const std::vector<LeafId>& leaves,
                            const std::vector<OrbitId>& order,
                            const std::function<End(const OrbitId&)>& end_of,
                            const std::map<LeafId, std::size_t>& leaf_edge) {
  std::vector<End> ends;
  for (const auto& o : order) ends.push_back(end_of(o));
  std::vector<Slot> slots;
  std::vector<OrbitId> seen;
  for (std::size_t i = 0; i <= leaves.size(); ++i) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (!ends[k].through && ends[k].index == static_cast<int>(i)) {
        slots.push_back({SlotKind::Stub, {}, {order[k]}});
        seen.push_back(order[k]);
      }
    }
    if (i == leaves.size()) break;
    Slot slot{SlotKind::Tick, leaves[i], {}};
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (ends[k].through && ends[k].index == static_cast<int>(i)) {
        slot.orbits.push_back(order[k]);
        seen.push_back(order[k]);
      }
    }
    if (!slot.orbits.empty()) {
      slot.kind = SlotKind::Link;
      slot.edge = leaf_edge.at(leaves[i]);
    }
    slots.push_back(std::move(slot));
  }
  if (seen != order) {
    throw Error("port sequence of " + node + " does not follow its leaf slots");
  }
  return slots;
}

const Slot& link_slot(const std::vector<Slot>& side, std::size_t edge) {
  for (const auto& slot : side) {
    if (slot.kind == SlotKind::Link && slot.edge == edge) return slot;
  }
  throw Error("internal error: corridor without attachment");
}

void connect_edges(Embedding& e) {
  for (std::size_t k = 0; k < e.edges.size(); ++k) {
    auto& edge = e.edges[k];
    const auto& out = link_slot(e.nodes[edge.from].east, k);
    const auto& in = link_slot(e.nodes[edge.to].west, k);
    if (out.orbits != in.orbits) {
      throw Error("port sequences disagree across corridor " + edge.leaf);
    }
    edge.strands = out.orbits;
  }
}

bool one_sided_less(const ValidatedScenario& s, const OrbitId& a, const OrbitId& b,
                    bool left) {
  if (a == b) return false;
  auto v = left ? compare_left(s, a, b) : compare_right(s, a, b);
  if (v.direction == Direction::FirstLess) return true;
  if (v.direction == Direction::SecondLess) return false;
  if (v.direction == Direction::Incomparable) {
    throw Error("internal error: orbits '" + a + "' and '" + b + "' are incomparable");
  }
  const auto& oa = s.orbit(s.orbit_index(a));
  const auto& ob = s.orbit(s.orbit_index(b));
  if (oa.tie_rank != ob.tie_rank) return oa.tie_rank < ob.tie_rank;
  return a < b;
}

OrderedOrbitList one_sided(const ValidatedScenario& s, std::string_view leaf, bool left) {
  return {std::string(leaf),
          sort_orbits(orbits_crossing(s, leaf), [&](const OrbitId& a, const OrbitId& b) {
            return one_sided_less(s, a, b, left);
          })};
}

}  // namespace

PortPlan port_plan(const ValidatedScenario& s, const ReducedStructure& r,
                   std::string_view m, PlanFault fault) {
  const MaxDomain& md = r.at(m);
  PortPlan p;
  p.domain = md.id;
  auto standard = [&](const OrbitId& a, const OrbitId& b) { return standard_less(s, a, b); };
  p.entry_seq = sort_orbits(md.crossers, standard);
  if (fault == PlanFault::ExitLikeEntry) {
    p.exit_seq = p.entry_seq;
  } else {
    p.exit_seq = sort_orbits(md.crossers, [&](const OrbitId& a, const OrbitId& b) {
      return adaptive_less(s, md, a, b);
    });
  }
  return p;
}

std::map<std::string, PortPlan> port_plans(const ValidatedScenario& s,
                                           const ReducedStructure& r, PlanFault fault) {
  std::map<std::string, PortPlan> plans;
  for (const auto& m : r.maxdomains) plans[m.id] = port_plan(s, r, m.id, fault);
  return plans;
}

CrossingMatrix::CrossingMatrix(std::vector<OrbitId> ids)
    : orbits(std::move(ids)),
      counts(orbits.size() * orbits.size(), 0),
      witness(orbits.size() * orbits.size()) {}

std::size_t CrossingMatrix::index(std::string_view orbit) const {
  auto it = std::find(orbits.begin(), orbits.end(), orbit);
  if (it == orbits.end()) throw Error("unknown orbit '" + std::string(orbit) + "'");
  return static_cast<std::size_t>(it - orbits.begin());
}

int CrossingMatrix::get(std::string_view a, std::string_view b) const {
  return at(index(a), index(b));
}

void CrossingMatrix::add(std::size_t i, std::size_t j, int n, const std::string& where) {
  counts[i * size() + j] += n;
  counts[j * size() + i] += n;
  if (!where.empty()) witness[i * size() + j] = witness[j * size() + i] = where;
}

bool CrossingMatrix::same_counts(const CrossingMatrix& other) const {
  return orbits == other.orbits && counts == other.counts;
}

CrossingMatrix inversion_counts(const ValidatedScenario& s,
                                const std::map<std::string, PortPlan>& plans) {
  std::vector<OrbitId> ids;
  for (std::size_t o = 0; o < s.orbit_count(); ++o) ids.push_back(s.orbit(static_cast<int>(o)).id);
  CrossingMatrix cm(ids);
  for (const auto& [id, plan] : plans) {
    std::map<OrbitId, std::size_t> exit_pos;
    for (std::size_t k = 0; k < plan.exit_seq.size(); ++k) exit_pos[plan.exit_seq[k]] = k;
    const auto& in = plan.entry_seq;
    for (std::size_t a = 0; a < in.size(); ++a) {
      for (std::size_t b = a + 1; b < in.size(); ++b) {
        if (exit_pos.at(in[a]) > exit_pos.at(in[b])) {
          cm.add(cm.index(in[a]), cm.index(in[b]), 1, id);
        }
      }
    }
  }
  return cm;
}

CrossingMatrix crossing_matrix(const ValidatedScenario& s, const ReducedStructure& r) {
  auto cm = inversion_counts(s, port_plans(s, r));
  for (std::size_t i = 0; i < cm.size(); ++i) {
    for (std::size_t j = i + 1; j < cm.size(); ++j) {
      if (cm.at(i, j) > 1) {
        throw Error("internal error: orbits '" + cm.orbits[i] + "' and '" + cm.orbits[j] +
                    "' cross " + std::to_string(cm.at(i, j)) + " times");
      }
    }
  }
  return cm;
}

CrossingMatrix weak_matrix(const ValidatedScenario& s) {
  std::vector<OrbitId> ids;
  for (std::size_t o = 0; o < s.orbit_count(); ++o) ids.push_back(s.orbit(static_cast<int>(o)).id);
  CrossingMatrix cm(ids);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (weak_transverse(s, ids[i], ids[j])) cm.add(i, j, 1, "");
    }
  }
  return cm;
}

OrderedOrbitList one_sided_order(const ValidatedScenario& s, std::string_view leaf) {
  return one_sided(s, leaf, true);
}

OrderedOrbitList one_sided_order_right(const ValidatedScenario& s, std::string_view leaf) {
  return one_sided(s, leaf, false);
}

std::size_t Embedding::node_index(std::string_view id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const EmbeddedNode& n, std::string_view key) { return n.id < key; });
  if (it == nodes.end() || it->id != id) {
    throw Error("unknown domain '" + std::string(id) + "'");
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

Embedding embed(const ValidatedScenario& s, const ReducedStructure& r,
                const std::map<std::string, PortPlan>& plans) {
  Embedding e;
  for (const auto& m : r.maxdomains) e.nodes.push_back({m.id, {}, {}});
  std::map<LeafId, std::size_t> leaf_edge;
  for (const auto& fe : r.forest_edges) {
    leaf_edge[fe.leaf] = e.edges.size();
    e.edges.push_back({e.node_index(fe.from), e.node_index(fe.to), fe.leaf, {}});
  }
  for (std::size_t i = 0; i < r.maxdomains.size(); ++i) {
    const auto& m = r.maxdomains[i];
    const auto& plan = plans.at(m.id);
    int first = s.domain_index(m.chain.front());
    int last = s.domain_index(m.chain.back());
    e.nodes[i].west = make_side(
        m.id, m.right, plan.entry_seq,
        [&](const OrbitId& o) { return entry_end(s, s.orbit_index(o), first); }, leaf_edge);
    e.nodes[i].east = make_side(
        m.id, m.left, plan.exit_seq,
        [&](const OrbitId& o) { return exit_end(s, s.orbit_index(o), last); }, leaf_edge);
  }
  connect_edges(e);
  for (std::size_t o = 0; o < s.orbit_count(); ++o) {
    const auto& id = s.orbit(static_cast<int>(o)).id;
    e.orbits.push_back(id);
    auto& route = e.routes[id];
    for (const auto& m : r.route_of(s, static_cast<int>(o))) route.push_back(e.node_index(m));
  }
  return e;
}

Embedding one_sided_embedding(const ValidatedScenario& s, const ReducedStructure& r,
                              std::string_view leaf) {
  const auto order = one_sided_order(s, leaf).order;
  const auto* placement = s.leaf(leaf);
  const std::string start = r.owner.at(s.domain(placement->right_owner).id);
  auto less = [&](const OrbitId& a, const OrbitId& b) { return one_sided_less(s, a, b, true); };

  // forward routes from the start box, with the leaves between boxes
  std::map<OrbitId, std::vector<std::string>> routes;
  std::map<std::pair<std::string, std::string>, LeafId> links;
  std::set<std::string> names;
  for (const auto& id : order) {
    int o = s.orbit_index(id);
    const auto& doms = s.orbit_domains(o);
    auto& route = routes[id];
    for (std::size_t k = 0; k < doms.size(); ++k) {
      const auto& m = r.owner.at(s.domain(doms[k]).id);
      if (route.empty()) {
        if (m == start) route.push_back(m);
      } else if (route.back() != m) {
        links[{route.back(), m}] = s.orbit_crossings(o)[k - 1];
        route.push_back(m);
      }
    }
    names.insert(route.begin(), route.end());
  }

  Embedding e;
  e.orbits = order;
  for (const auto& n : names) e.nodes.push_back({n, {}, {}});
  std::map<LeafId, std::size_t> leaf_edge;
  for (const auto& [ends, l] : links) {
    leaf_edge[l] = e.edges.size();
    e.edges.push_back({e.node_index(ends.first), e.node_index(ends.second), l, {}});
  }
  for (auto& node : e.nodes) {
    const auto& m = r.at(node.id);
    std::vector<OrbitId> here;
    for (const auto& id : order) {
      const auto& route = routes[id];
      if (std::find(route.begin(), route.end(), node.id) != route.end()) here.push_back(id);
    }
    here = sort_orbits(here, less);
    int first = s.domain_index(m.chain.front());
    int last = s.domain_index(m.chain.back());
    if (node.id == start) {
      for (const auto& id : order) node.west.push_back({SlotKind::Stub, {}, {id}});
    } else {
      node.west = make_side(
          node.id, m.right, here,
          [&](const OrbitId& o) { return entry_end(s, s.orbit_index(o), first); }, leaf_edge);
    }
    node.east = make_side(
        node.id, m.left, here,
        [&](const OrbitId& o) { return exit_end(s, s.orbit_index(o), last); }, leaf_edge);
  }
  connect_edges(e);
  for (const auto& [id, route] : routes) {
    for (const auto& m : route) e.routes[id].push_back(e.node_index(m));
  }
  return e;
}

namespace {

struct Feature {
  bool link;
  std::size_t edge;
  BoundaryEnd end;
};

// Counterclockwise around a box: west side downwards, east side upwards.
std::vector<Feature> features(const EmbeddedNode& n) {
  std::vector<Feature> out;
  for (const auto& slot : n.west) {
    if (slot.kind == SlotKind::Link) out.push_back({true, slot.edge, {}});
    if (slot.kind == SlotKind::Stub) out.push_back({false, 0, {slot.orbits[0], EndKind::Backward}});
  }
  for (auto it = n.east.rbegin(); it != n.east.rend(); ++it) {
    if (it->kind == SlotKind::Link) out.push_back({true, it->edge, {}});
    if (it->kind == SlotKind::Stub) out.push_back({false, 0, {it->orbits[0], EndKind::Forward}});
  }
  return out;
}

}  // namespace

BoundaryOrder boundary_order(const Embedding& e) {
  std::vector<std::vector<Feature>> feats;
  for (const auto& n : e.nodes) feats.push_back(features(n));
  std::vector<bool> visited(e.nodes.size(), false);
  BoundaryOrder b;
  b.orbits = e.orbits;

  std::function<void(std::size_t, long)> walk = [&](std::size_t node, long entered) {
    visited[node] = true;
    const auto& f = feats[node];
    const std::size_t n = f.size();
    const std::size_t begin = entered < 0 ? 0 : static_cast<std::size_t>(entered) + 1;
    const std::size_t count = entered < 0 ? n : n - 1;
    for (std::size_t k = 0; k < count; ++k) {
      const auto& feature = f[(begin + k) % n];
      if (!feature.link) {
        b.ends.push_back(feature.end);
        continue;
      }
      const auto& edge = e.edges[feature.edge];
      std::size_t other = edge.from == node ? edge.to : edge.from;
      const auto& g = feats[other];
      long at = -1;
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[j].link && g[j].edge == feature.edge) at = static_cast<long>(j);
      }
      walk(other, at);
    }
  };
  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    if (visited[i]) continue;
    b.component_starts.push_back(b.ends.size());
    walk(i, -1);
  }
  return b;
}

BoundaryOrder boundary_order(const ValidatedScenario& s, const ReducedStructure& r) {
  return boundary_order(embed(s, r, port_plans(s, r)));
}

CrossingMatrix interleaving_matrix(const BoundaryOrder& b) {
  CrossingMatrix cm(b.orbits);
  std::vector<std::vector<std::size_t>> pos(b.orbits.size());
  for (std::size_t k = 0; k < b.ends.size(); ++k) pos[cm.index(b.ends[k].orbit)].push_back(k);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i].size() != 2) throw Error("orbit '" + b.orbits[i] + "' lacks two ends");
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      auto lo = std::min(pos[i][0], pos[i][1]), hi = std::max(pos[i][0], pos[i][1]);
      int inside = 0;
      for (auto p : pos[j]) inside += (p > lo && p < hi) ? 1 : 0;
      if (inside == 1) cm.add(i, j, 1, "");
    }
  }
  return cm;
}

bool same_up_to_rotation(const BoundaryOrder& a, const BoundaryOrder& b) {
  if (a.ends.size() != b.ends.size() || a.component_starts != b.component_starts) {
    return false;
  }
  for (std::size_t c = 0; c < a.component_starts.size(); ++c) {
    std::size_t lo = a.component_starts[c];
    std::size_t hi = c + 1 < a.component_starts.size() ? a.component_starts[c + 1] : a.ends.size();
    std::vector<BoundaryEnd> x(a.ends.begin() + lo, a.ends.begin() + hi);
    std::vector<BoundaryEnd> y(b.ends.begin() + lo, b.ends.begin() + hi);
    bool found = x.empty();
    for (std::size_t shift = 0; shift < x.size() && !found; ++shift) {
      std::rotate(y.begin(), y.begin() + 1, y.end());
      found = x == y;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace foliage
