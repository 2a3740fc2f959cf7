#include "foliage/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace foliage {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(line == 0 ? message
                      : message + " at line " + std::to_string(line) +
                            ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

std::string join_findings(const std::vector<Finding>& findings) {
  std::string out = std::to_string(findings.size()) + " validation finding(s)";
  for (const auto& f : findings) out += "\n  " + f.message;
  return out;
}

void require_fields(const json& obj, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional,
                    const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = std::any_of(required.begin(), required.end(),
                             [&](const char* k) { return key == k; }) ||
                 std::any_of(optional.begin(), optional.end(),
                             [&](const char* k) { return key == k; });
    if (!known) throw ParseError(where + ": unknown field '" + key + "'");
  }
  for (const char* k : required) {
    if (!obj.contains(k)) {
      throw ParseError(where + ": missing field '" + std::string(k) + "'");
    }
  }
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> get_strings(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(get_string(e, where));
  return out;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  auto n = v.get<long long>();
  if (n < -(1LL << 31) || n >= (1LL << 31)) {
    throw ParseError(where + ": integer out of range");
  }
  return static_cast<int>(n);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1,
                                             text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("syntax error", line, column);
  }

  require_fields(doc, {"domains", "orbits"}, {}, "document");
  if (!doc["domains"].is_array()) throw ParseError("domains: expected an array");
  if (!doc["orbits"].is_array()) throw ParseError("orbits: expected an array");

  Scenario s;
  std::set<std::string> domain_ids, leaf_ids, orbit_ids;
  for (const auto& d : doc["domains"]) {
    require_fields(d, {"id", "left", "right"}, {}, "domain");
    SkeletonDomain dom;
    dom.id = get_string(d["id"], "domain id");
    const std::string where = "domain '" + dom.id + "'";
    if (!domain_ids.insert(dom.id).second) {
      throw ParseError("duplicate id: domain '" + dom.id + "'");
    }
    dom.left = get_strings(d["left"], where + " left");
    dom.right = get_strings(d["right"], where + " right");
    leaf_ids.insert(dom.left.begin(), dom.left.end());
    leaf_ids.insert(dom.right.begin(), dom.right.end());
    s.domains.push_back(std::move(dom));
  }
  for (const auto& o : doc["orbits"]) {
    require_fields(o, {"id", "path", "entry_cut", "exit_cut"}, {"tie_rank"},
                   "orbit");
    Orbit orb;
    orb.id = get_string(o["id"], "orbit id");
    const std::string where = "orbit '" + orb.id + "'";
    if (!orbit_ids.insert(orb.id).second) {
      throw ParseError("duplicate id: orbit '" + orb.id + "'");
    }
    orb.path = get_strings(o["path"], where + " path");
    for (std::size_t i = 0; i < orb.path.size(); ++i) {
      const auto& name = orb.path[i];
      if (i % 2 == 0 && !domain_ids.count(name)) {
        throw ParseError(where + ": unknown domain '" + name + "' in path");
      }
      if (i % 2 == 1 && !leaf_ids.count(name)) {
        throw ParseError(where + ": unknown leaf '" + name + "' in path");
      }
    }
    orb.entry_cut = get_int(o["entry_cut"], where + " entry_cut");
    orb.exit_cut = get_int(o["exit_cut"], where + " exit_cut");
    if (o.contains("tie_rank")) orb.tie_rank = get_int(o["tie_rank"], where + " tie_rank");
    s.orbits.push_back(std::move(orb));
  }
  return s;
}

std::string emit_scenario(const Scenario& s) {
  json doc = json::object();
  json domains = json::array();
  for (const auto& d : s.domains) {
    domains.push_back({{"id", d.id}, {"left", d.left}, {"right", d.right}});
  }
  json orbits = json::array();
  for (const auto& o : s.orbits) {
    orbits.push_back({{"id", o.id},
                      {"path", o.path},
                      {"entry_cut", o.entry_cut},
                      {"exit_cut", o.exit_cut},
                      {"tie_rank", o.tie_rank}});
  }
  doc["domains"] = std::move(domains);
  doc["orbits"] = std::move(orbits);
  return doc.dump(2) + "\n";
}

ValidationReport validate(const Scenario& s) {
  std::set<Finding> found;
  auto add = [&](std::string code, std::string message) {
    found.insert({std::move(code), std::move(message)});
  };

  std::map<std::string, int> domain_of;
  for (std::size_t i = 0; i < s.domains.size(); ++i) {
    const auto& d = s.domains[i];
    if (d.id.empty()) add("empty-id", "empty domain id");
    if (!domain_of.emplace(d.id, static_cast<int>(i)).second) {
      add("duplicate-id", "duplicate domain id '" + d.id + "'");
    }
  }
  std::set<std::string> orbit_ids;
  for (const auto& o : s.orbits) {
    if (o.id.empty()) add("empty-id", "empty orbit id");
    if (!orbit_ids.insert(o.id).second) {
      add("duplicate-id", "duplicate orbit id '" + o.id + "'");
    }
  }

  // leaf -> owners on each side
  std::map<std::string, std::vector<int>> left_owners, right_owners;
  for (std::size_t i = 0; i < s.domains.size(); ++i) {
    const auto& d = s.domains[i];
    std::set<std::string> seen;
    for (const auto* list : {&d.left, &d.right}) {
      for (const auto& leaf : *list) {
        if (leaf.empty()) add("empty-id", "empty leaf id in domain '" + d.id + "'");
        if (!seen.insert(leaf).second) {
          add("leaf-repeated",
              "leaf '" + leaf + "' repeats in the boundary of domain '" + d.id + "'");
        }
      }
    }
    for (const auto& leaf : d.left) left_owners[leaf].push_back(static_cast<int>(i));
    for (const auto& leaf : d.right) right_owners[leaf].push_back(static_cast<int>(i));
  }
  for (const auto& [leaf, owners] : left_owners) {
    if (owners.size() > 1) {
      add("leaf-multiple-left", "leaf '" + leaf + "' is in more than one left list");
    }
  }
  for (const auto& [leaf, owners] : right_owners) {
    if (owners.size() > 1) {
      add("leaf-multiple-right", "leaf '" + leaf + "' is in more than one right list");
    }
  }

  // Acyclicity: a component with at least as many edges as vertices has a
  // cycle. Counting per component keeps the finding order-independent.
  std::vector<int> parent(s.domains.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& [leaf, lefts] : left_owners) {
    auto it = right_owners.find(leaf);
    if (it == right_owners.end()) continue;
    for (int a : lefts) {
      for (int b : it->second) {
        edges.emplace_back(a, b);
        parent[find(a)] = find(b);
      }
    }
  }
  std::map<int, int> edge_count, vertex_count;
  std::map<int, std::string> component_name;
  for (std::size_t i = 0; i < s.domains.size(); ++i) {
    int root = find(static_cast<int>(i));
    ++vertex_count[root];
    auto [it, fresh] = component_name.emplace(root, s.domains[i].id);
    if (!fresh) it->second = std::min(it->second, s.domains[i].id);
  }
  for (auto [a, b] : edges) ++edge_count[find(a)];
  for (const auto& [root, count] : edge_count) {
    if (count >= vertex_count[root]) {
      add("forest-violation", "forest violation: the component of domain '" +
                                  component_name[root] + "' contains a cycle");
    }
  }

  auto is_edge = [&](const std::string& from, const std::string& leaf,
                     const std::string& to) {
    auto a = domain_of.find(from), b = domain_of.find(to);
    if (a == domain_of.end() || b == domain_of.end()) return false;
    const auto& l = s.domains[a->second].left;
    const auto& r = s.domains[b->second].right;
    return std::find(l.begin(), l.end(), leaf) != l.end() &&
           std::find(r.begin(), r.end(), leaf) != r.end();
  };

  for (const auto& o : s.orbits) {
    const std::string who = "orbit '" + o.id + "'";
    if (o.path.empty() || o.path.size() % 2 == 0) {
      add("path-shape", who + " path must alternate domains and leaves with odd length");
      continue;
    }
    bool path_ok = true;
    std::set<std::string> visited;
    for (std::size_t i = 0; i < o.path.size(); i += 2) {
      const auto& dom = o.path[i];
      if (!domain_of.count(dom)) {
        add("unknown-domain", who + " names unknown domain '" + dom + "'");
        path_ok = false;
      } else if (!visited.insert(dom).second) {
        add("domain-revisited", who + " visits domain '" + dom + "' twice");
      }
    }
    for (std::size_t i = 1; i < o.path.size(); i += 2) {
      const auto& leaf = o.path[i];
      if (!left_owners.count(leaf) && !right_owners.count(leaf)) {
        add("unknown-leaf", who + " names unknown leaf '" + leaf + "'");
        path_ok = false;
      }
    }
    if (path_ok) {
      for (std::size_t i = 1; i < o.path.size(); i += 2) {
        if (!is_edge(o.path[i - 1], o.path[i], o.path[i + 1])) {
          add("not-an-edge", who + " step " + o.path[i - 1] + " -" + o.path[i] +
                                 "-> " + o.path[i + 1] + " is not a skeleton edge");
        }
      }
    }
    auto first = domain_of.find(o.path.front());
    if (first != domain_of.end()) {
      int n = static_cast<int>(s.domains[first->second].right.size());
      if (o.entry_cut < 0 || o.entry_cut > n) {
        add("cut-range", "cut out of range: " + who + " entry_cut " +
                             std::to_string(o.entry_cut) + " not in [0, " +
                             std::to_string(n) + "]");
      }
    }
    auto last = domain_of.find(o.path.back());
    if (last != domain_of.end()) {
      int n = static_cast<int>(s.domains[last->second].left.size());
      if (o.exit_cut < 0 || o.exit_cut > n) {
        add("cut-range", "cut out of range: " + who + " exit_cut " +
                             std::to_string(o.exit_cut) + " not in [0, " +
                             std::to_string(n) + "]");
      }
    }
  }

  return {std::vector<Finding>(found.begin(), found.end())};
}

ValidationError::ValidationError(std::vector<Finding> findings)
    : Error(join_findings(findings)), findings_(std::move(findings)) {}

struct ValidatedScenario::Data {
  Scenario scenario;
  std::unordered_map<std::string, int> domain_index;
  std::unordered_map<std::string, int> orbit_index;
  std::unordered_map<std::string, LeafPlacement> leaves;
  std::vector<std::vector<int>> orbit_domains;
  std::vector<std::vector<LeafId>> orbit_crossings;
  std::vector<std::unordered_map<int, int>> path_position;
  std::unordered_map<std::string, std::vector<int>> leaf_orbits;
  std::vector<std::vector<int>> domain_orbits;
};

ValidatedScenario::ValidatedScenario(Scenario s) {
  auto report = validate(s);
  if (!report.ok()) throw ValidationError(report.findings);

  auto data = std::make_shared<Data>();
  data->scenario = std::move(s);
  const auto& sc = data->scenario;
  for (std::size_t i = 0; i < sc.domains.size(); ++i) {
    const auto& d = sc.domains[i];
    data->domain_index[d.id] = static_cast<int>(i);
    for (std::size_t p = 0; p < d.left.size(); ++p) {
      auto& pl = data->leaves[d.left[p]];
      pl.left_owner = static_cast<int>(i);
      pl.left_pos = static_cast<int>(p);
    }
    for (std::size_t p = 0; p < d.right.size(); ++p) {
      auto& pl = data->leaves[d.right[p]];
      pl.right_owner = static_cast<int>(i);
      pl.right_pos = static_cast<int>(p);
    }
  }
  data->domain_orbits.resize(sc.domains.size());
  for (std::size_t o = 0; o < sc.orbits.size(); ++o) {
    const auto& orb = sc.orbits[o];
    data->orbit_index[orb.id] = static_cast<int>(o);
    std::vector<int> doms;
    std::vector<LeafId> leaves;
    std::unordered_map<int, int> pos;
    for (std::size_t i = 0; i < orb.path.size(); ++i) {
      if (i % 2 == 0) {
        int d = data->domain_index.at(orb.path[i]);
        pos[d] = static_cast<int>(doms.size());
        doms.push_back(d);
        data->domain_orbits[d].push_back(static_cast<int>(o));
      } else {
        leaves.push_back(orb.path[i]);
        data->leaf_orbits[orb.path[i]].push_back(static_cast<int>(o));
      }
    }
    data->orbit_domains.push_back(std::move(doms));
    data->orbit_crossings.push_back(std::move(leaves));
    data->path_position.push_back(std::move(pos));
  }
  data_ = std::move(data);
}

const Scenario& ValidatedScenario::scenario() const { return data_->scenario; }

std::size_t ValidatedScenario::domain_count() const {
  return data_->scenario.domains.size();
}

int ValidatedScenario::find_domain(std::string_view id) const {
  auto it = data_->domain_index.find(std::string(id));
  return it == data_->domain_index.end() ? -1 : it->second;
}

int ValidatedScenario::domain_index(std::string_view id) const {
  int d = find_domain(id);
  if (d < 0) throw Error("unknown domain '" + std::string(id) + "'");
  return d;
}

const SkeletonDomain& ValidatedScenario::domain(int d) const {
  return data_->scenario.domains.at(d);
}

const LeafPlacement* ValidatedScenario::leaf(std::string_view id) const {
  auto it = data_->leaves.find(std::string(id));
  return it == data_->leaves.end() ? nullptr : &it->second;
}

std::size_t ValidatedScenario::orbit_count() const {
  return data_->scenario.orbits.size();
}

int ValidatedScenario::orbit_index(std::string_view id) const {
  auto it = data_->orbit_index.find(std::string(id));
  if (it == data_->orbit_index.end()) {
    throw Error("unknown orbit '" + std::string(id) + "'");
  }
  return it->second;
}

const Orbit& ValidatedScenario::orbit(int o) const {
  return data_->scenario.orbits.at(o);
}

const std::vector<int>& ValidatedScenario::orbit_domains(int o) const {
  return data_->orbit_domains.at(o);
}

const std::vector<LeafId>& ValidatedScenario::orbit_crossings(int o) const {
  return data_->orbit_crossings.at(o);
}

int ValidatedScenario::path_position(int o, int d) const {
  const auto& pos = data_->path_position.at(o);
  auto it = pos.find(d);
  return it == pos.end() ? -1 : it->second;
}

const std::vector<int>& ValidatedScenario::orbits_crossing(std::string_view leaf) const {
  static const std::vector<int> none;
  auto it = data_->leaf_orbits.find(std::string(leaf));
  return it == data_->leaf_orbits.end() ? none : it->second;
}

const std::vector<int>& ValidatedScenario::orbits_in_domain(int d) const {
  return data_->domain_orbits.at(d);
}

}  // namespace foliage
