#include "foliage/decompose.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace foliage {

CrossedSet crossed_set(const ValidatedScenario& s, std::string_view orbit) {
  int o = s.orbit_index(orbit);
  CrossedSet c;
  c.orbit = std::string(orbit);
  for (int d : s.orbit_domains(o)) c.domains.push_back(s.domain(d).id);
  c.crossings = s.orbit_crossings(o);
  c.alpha = c.domains.front();
  c.omega = c.domains.back();
  return c;
}

std::optional<CommonSubpath> common_subpath(const ValidatedScenario& s,
                                            std::string_view o1,
                                            std::string_view o2) {
  int a = s.orbit_index(o1), b = s.orbit_index(o2);
  const auto& pa = s.orbit_domains(a);
  const auto& pb = s.orbit_domains(b);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    int j = s.path_position(b, pa[i]);
    if (j < 0) continue;
    CommonSubpath c;
    for (std::size_t k = 0; i + k < pa.size() && j + k < pb.size() &&
                            pa[i + k] == pb[j + k];
         ++k) {
      c.chain.push_back(s.domain(pa[i + k]).id);
    }
    c.first = c.chain.front();
    c.last = c.chain.back();
    return c;
  }
  return std::nullopt;
}

const MaxDomain* ReducedStructure::find(std::string_view id) const {
  auto it = std::lower_bound(
      maxdomains.begin(), maxdomains.end(), id,
      [](const MaxDomain& m, std::string_view key) { return m.id < key; });
  return it != maxdomains.end() && it->id == id ? &*it : nullptr;
}

const MaxDomain& ReducedStructure::at(std::string_view id) const {
  const MaxDomain* m = find(id);
  if (!m) throw Error("unknown domain '" + std::string(id) + "'");
  return *m;
}

std::string ReducedStructure::owner_of(const DomainId& d) const {
  auto it = owner.find(d);
  return it == owner.end() ? std::string() : it->second;
}

std::vector<std::string> ReducedStructure::route_of(const ValidatedScenario& s,
                                                    int orbit) const {
  std::vector<std::string> route;
  for (int d : s.orbit_domains(orbit)) {
    const auto& m = owner.at(s.domain(d).id);
    if (route.empty() || route.back() != m) route.push_back(m);
  }
  return route;
}

ReducedStructure reduce(const ValidatedScenario& s) {
  const std::size_t nd = s.domain_count();
  auto crossers_of_domain = [&](int d) -> const std::vector<int>& { return s.orbits_in_domain(d); };

  // next[d] / prev[d]: chain neighbours across a non-critical leaf
  std::vector<int> next(nd, -1), prev(nd, -1);
  std::vector<LeafId> next_leaf(nd);
  std::set<LeafId> crossed, merged;
  for (std::size_t o = 0; o < s.orbit_count(); ++o) {
    for (const auto& leaf : s.orbit_crossings(static_cast<int>(o))) crossed.insert(leaf);
  }
  for (const auto& leaf : crossed) {
    const auto* pl = s.leaf(leaf);
    const auto& via = s.orbits_crossing(leaf);
    if (crossers_of_domain(pl->left_owner) == via &&
        crossers_of_domain(pl->right_owner) == via) {
      next[pl->left_owner] = pl->right_owner;
      next_leaf[pl->left_owner] = leaf;
      prev[pl->right_owner] = pl->left_owner;
      merged.insert(leaf);
    }
  }

  ReducedStructure r;
  for (std::size_t d0 = 0; d0 < nd; ++d0) {
    if (prev[d0] >= 0 || crossers_of_domain(static_cast<int>(d0)).empty()) continue;
    MaxDomain m;
    std::vector<int> chain;
    for (int d = static_cast<int>(d0); d >= 0; d = next[d]) chain.push_back(d);
    m.id = "M:";
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto& dom = s.domain(chain[i]);
      m.chain.push_back(dom.id);
      m.id += (i ? "+" : "") + dom.id;
      if (i > 0) {
        for (const auto& leaf : dom.right) {
          if (leaf != next_leaf[chain[i - 1]]) m.shed.push_back(leaf);
        }
      }
      if (i + 1 < chain.size()) {
        for (const auto& leaf : dom.left) {
          if (leaf != next_leaf[chain[i]]) m.shed.push_back(leaf);
        }
      }
    }
    m.right = s.domain(chain.front()).right;
    m.left = s.domain(chain.back()).left;
    for (int o : crossers_of_domain(chain.front())) m.crossers.push_back(s.orbit(o).id);

    DomainRoles roles;
    std::set<DomainId> members(m.chain.begin(), m.chain.end());
    for (int o : crossers_of_domain(chain.front())) {
      const auto& doms = s.orbit_domains(o);
      const auto& id = s.orbit(o).id;
      bool alpha = members.count(s.domain(doms.front()).id) > 0;
      bool omega = members.count(s.domain(doms.back()).id) > 0;
      (alpha ? roles.alpha : roles.in).push_back(id);
      (omega ? roles.omega : roles.out).push_back(id);
    }
    for (const auto& d : m.chain) r.owner[d] = m.id;
    r.roles[m.id] = std::move(roles);
    r.maxdomains.push_back(std::move(m));
  }
  std::sort(r.maxdomains.begin(), r.maxdomains.end(),
            [](const MaxDomain& a, const MaxDomain& b) { return a.id < b.id; });

  for (const auto& leaf : crossed) {
    if (merged.count(leaf)) continue;
    const auto* pl = s.leaf(leaf);
    r.critical.push_back(leaf);
    r.forest_edges.push_back({r.owner.at(s.domain(pl->left_owner).id), leaf,
                              r.owner.at(s.domain(pl->right_owner).id)});
  }
  std::sort(r.forest_edges.begin(), r.forest_edges.end(),
            [](const ForestEdge& a, const ForestEdge& b) {
              return std::tie(a.from, a.leaf) < std::tie(b.from, b.leaf);
            });
  return r;
}

DomainRoles domain_roles(const ReducedStructure& r, std::string_view m) {
  r.at(m);
  return r.roles.at(std::string(m));
}

}  // namespace foliage
