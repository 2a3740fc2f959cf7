#include "foliage/check.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "foliage/decompose.hpp"
#include "foliage/geometry.hpp"
#include "foliage/relations.hpp"
#include "json.hpp"

namespace foliage {

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = {
      "preorder-totality",   "preorder-transitivity", "mutuality-asymptotic",
      "classic-implies-weak", "standard-order-total", "adaptive-order-total",
      "restriction-consistency", "handoff-consistency", "theorem-b-law",
      "theorem-b-geometric", "crossing-bound",        "theorem-c-equivalence",
      "oracle-agreement",    "chord-law",             "interleaving-law",
      "boundary-realization", "embedding-sanity",     "canonical-roundtrip"};
  return names;
}

namespace {

using Ids = std::vector<OrbitId>;
using Verdict = std::optional<std::string>;

std::string join(const Ids& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out + "]";
}

Ids restrict_to(const Ids& seq, const Ids& keep) {
  Ids out;
  for (const auto& o : seq) {
    if (std::find(keep.begin(), keep.end(), o) != keep.end()) out.push_back(o);
  }
  return out;
}

bool non_strict_le(const RelationVerdict& v) {
  return v.direction == Direction::FirstLess || v.direction == Direction::Equivalent;
}

std::string first_difference(const CrossingMatrix& a, const CrossingMatrix& b) {
  if (a.orbits != b.orbits) return "orbit lists differ";
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a.at(i, j) != b.at(i, j)) {
        return "(" + a.orbits[i] + "," + a.orbits[j] + "): " + std::to_string(a.at(i, j)) +
               " vs " + std::to_string(b.at(i, j));
      }
    }
  }
  return "";
}

Verdict matrices_agree(const CrossingMatrix& a, const CrossingMatrix& b) {
  if (a.same_counts(b)) return std::nullopt;
  return first_difference(a, b);
}

// Lazily computed pieces shared by the properties of one scenario.
class Context {
 public:
  Context(const ValidatedScenario& s, PlanFault fault) : s_(s), fault_(fault) {
    std::set<LeafId> seen;
    for (std::size_t o = 0; o < s.orbit_count(); ++o) {
      ids_.push_back(s.orbit(static_cast<int>(o)).id);
      for (const auto& l : s.orbit_crossings(static_cast<int>(o))) {
        if (seen.insert(l).second) leaves_.push_back(l);
      }
    }
    std::sort(leaves_.begin(), leaves_.end());
  }

  const ValidatedScenario& s() const { return s_; }
  const Ids& ids() const { return ids_; }
  const std::vector<LeafId>& leaves() const { return leaves_; }

  const ReducedStructure& reduced() {
    if (!reduced_) reduced_ = reduce(s_);
    return *reduced_;
  }
  const std::map<std::string, PortPlan>& plans() {
    if (!plans_) plans_ = port_plans(s_, reduced(), fault_);
    return *plans_;
  }
  const CrossingMatrix& inversions() {
    if (!inversions_) inversions_ = inversion_counts(s_, plans());
    return *inversions_;
  }
  const CrossingMatrix& weak() {
    if (!weak_) weak_ = weak_matrix(s_);
    return *weak_;
  }
  const BoundaryOrder& boundary() {
    if (!boundary_) boundary_ = boundary_order(embedding());
    return *boundary_;
  }
  const Embedding& embedding() {
    if (!embedding_) embedding_ = embed(s_, reduced(), plans());
    return *embedding_;
  }
  const PolylineSet& drawing() {
    if (!drawing_) drawing_ = route(layout(embedding()));
    return *drawing_;
  }

 private:
  const ValidatedScenario& s_;
  PlanFault fault_;
  Ids ids_;
  std::vector<LeafId> leaves_;
  std::optional<ReducedStructure> reduced_;
  std::optional<std::map<std::string, PortPlan>> plans_;
  std::optional<CrossingMatrix> inversions_, weak_;
  std::optional<BoundaryOrder> boundary_;
  std::optional<Embedding> embedding_;
  std::optional<PolylineSet> drawing_;
};

using Comparison = RelationVerdict (*)(const ValidatedScenario&, std::string_view, std::string_view);
const std::pair<const char*, Comparison> kSides[] = {{"L", compare_left}, {"R", compare_right}};

Verdict preorder_totality(Context& c) {
  for (const auto& leaf : c.leaves()) {
    auto orb = orbits_crossing(c.s(), leaf);
    for (const auto& a : orb) {
      for (const auto& b : orb) {
        for (const auto& [side, cmp] : kSides) {
          auto v = cmp(c.s(), a, b);
          if (v.direction == Direction::Incomparable) {
            return std::string(side) + " leaves " + a + ", " + b + " incomparable at " + leaf;
          }
        }
      }
    }
  }
  return std::nullopt;
}

Verdict preorder_transitivity(Context& c) {
  for (const auto& leaf : c.leaves()) {
    auto orb = orbits_crossing(c.s(), leaf);
    for (const auto& [side, cmp] : kSides) {
      std::map<std::pair<OrbitId, OrbitId>, bool> le;
      for (const auto& a : orb) {
        for (const auto& b : orb) le[{a, b}] = non_strict_le(cmp(c.s(), a, b));
      }
      for (const auto& a : orb) {
        for (const auto& b : orb) {
          if (!le[{a, b}]) continue;
          for (const auto& x : orb) {
            if (le[{b, x}] && !le[{a, x}]) {
              return std::string(side) + " not transitive on " + a + ", " + b + ", " + x +
                     " at " + leaf;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

Verdict mutuality_asymptotic(Context& c) {
  for (const auto& leaf : c.leaves()) {
    auto orb = orbits_crossing(c.s(), leaf);
    for (const auto& a : orb) {
      for (const auto& b : orb) {
        bool mutual_l = non_strict_le(compare_left(c.s(), a, b)) && non_strict_le(compare_left(c.s(), b, a));
        bool mutual_r = non_strict_le(compare_right(c.s(), a, b)) && non_strict_le(compare_right(c.s(), b, a));
        if (mutual_l != plus_asymptotic(c.s(), a, b)) return "L mutuality differs from +~ for " + a + ", " + b;
        if (mutual_r != minus_asymptotic(c.s(), a, b)) return "R mutuality differs from -~ for " + a + ", " + b;
      }
    }
  }
  return std::nullopt;
}

Verdict classic_implies_weak(Context& c) {
  for (const auto& a : c.ids()) {
    for (const auto& b : c.ids()) {
      if (classic_transverse(c.s(), a, b) && !weak_transverse(c.s(), a, b)) {
        return a + ", " + b + " classic but not weak";
      }
    }
  }
  return std::nullopt;
}

template <class Less>
Verdict strict_total(const Ids& items, Less less, const std::string& where) {
  for (const auto& a : items) {
    if (less(a, a)) return "irreflexivity fails for " + a + " in " + where;
    for (const auto& b : items) {
      if (a == b) continue;
      bool ab = less(a, b), ba = less(b, a);
      if (ab == ba) return "pair " + a + ", " + b + " not strictly ordered in " + where;
      if (!ab) continue;
      for (const auto& x : items) {
        if (x != a && x != b && less(b, x) && !less(a, x)) {
          return "not transitive on " + a + ", " + b + ", " + x + " in " + where;
        }
      }
    }
  }
  return std::nullopt;
}

Verdict standard_order_total(Context& c) {
  for (const auto& leaf : c.leaves()) {
    auto v = strict_total(orbits_crossing(c.s(), leaf),
                          [&](const OrbitId& a, const OrbitId& b) { return standard_less(c.s(), a, b); },
                          leaf);
    if (v) return v;
  }
  return std::nullopt;
}

Verdict adaptive_order_total(Context& c) {
  for (const auto& m : c.reduced().maxdomains) {
    auto v = strict_total(m.crossers,
                          [&](const OrbitId& a, const OrbitId& b) { return adaptive_less(c.s(), m, a, b); },
                          m.id);
    if (v) return v;
  }
  return std::nullopt;
}

Verdict restriction_consistency(Context& c) {
  const auto& r = c.reduced();
  for (const auto& m : r.maxdomains) {
    auto adaptive = adaptive_order(c.s(), r, m.id).order;
    for (const auto& leaf : m.left) {
      if (std::find(c.leaves().begin(), c.leaves().end(), leaf) == c.leaves().end()) continue;
      auto standard = standard_order(c.s(), leaf).order;
      auto restricted = restrict_to(adaptive, standard);
      if (restricted != standard) {
        return m.id + " at " + leaf + ": adaptive " + join(restricted) + " vs standard " + join(standard);
      }
    }
  }
  return std::nullopt;
}

Verdict handoff_consistency(Context& c) {
  const auto& plans = c.plans();
  for (const auto& e : c.reduced().forest_edges) {
    auto standard = standard_order(c.s(), e.leaf).order;
    auto out = restrict_to(plans.at(e.from).exit_seq, standard);
    auto in = restrict_to(plans.at(e.to).entry_seq, standard);
    if (out != standard || in != standard) {
      return e.from + " -" + e.leaf + "-> " + e.to + ": exit " + join(out) + ", entry " + join(in) +
             ", standard " + join(standard);
    }
  }
  return std::nullopt;
}

Verdict theorem_b_law(Context& c) {
  for (const auto& leaf : c.leaves()) {
    auto left = one_sided_order(c.s(), leaf).order;
    auto right = one_sided_order_right(c.s(), leaf).order;
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = i + 1; j < left.size(); ++j) {
        if (!non_strict_le(compare_left(c.s(), left[i], left[j]))) {
          return "L order at " + leaf + " puts " + left[i] + " before " + left[j];
        }
        if (!non_strict_le(compare_right(c.s(), right[i], right[j]))) {
          return "R order at " + leaf + " puts " + right[i] + " before " + right[j];
        }
      }
    }
  }
  return std::nullopt;
}

Verdict theorem_b_geometric(Context& c) {
  for (const auto& leaf : c.leaves()) {
    auto pieces = route(layout(one_sided_embedding(c.s(), c.reduced(), leaf)));
    auto points = crossing_points(pieces);
    if (!points.empty()) {
      return "forward pieces of " + points[0].a + ", " + points[0].b + " from " + leaf + " cross";
    }
  }
  return std::nullopt;
}

Verdict crossing_bound(Context& c) {
  const auto& m = c.inversions();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m.at(i, j) > 1) {
        return m.orbits[i] + ", " + m.orbits[j] + " cross " + std::to_string(m.at(i, j)) + " times";
      }
    }
  }
  return std::nullopt;
}

Verdict embedding_sanity(Context& c) {
  const auto& p = c.drawing();
  for (const auto& line : p.lines) {
    if (!is_simple(line.points)) return "polyline of " + line.orbit + " is not simple";
  }
  for (const auto& x : crossing_points(p)) {
    if (x.box.empty()) return x.a + ", " + x.b + " cross outside every box";
  }
  return std::nullopt;
}

Verdict canonical_roundtrip(Context& c) {
  auto text = emit_scenario(c.s().scenario());
  if (emit_scenario(parse_scenario(text)) != text) return "emit/parse/emit is not stable";
  return std::nullopt;
}

using Property = std::function<Verdict(Context&)>;

const std::vector<Property>& properties() {
  static const std::vector<Property> list = {
      preorder_totality,
      preorder_transitivity,
      mutuality_asymptotic,
      classic_implies_weak,
      standard_order_total,
      adaptive_order_total,
      restriction_consistency,
      handoff_consistency,
      theorem_b_law,
      theorem_b_geometric,
      crossing_bound,
      [](Context& c) { return matrices_agree(c.inversions(), c.weak()); },
      [](Context& c) { return matrices_agree(exact_crossings(c.drawing()), c.inversions()); },
      [](Context& c) { return matrices_agree(chord_diagram(c.boundary()).interleaving, c.weak()); },
      [](Context& c) { return matrices_agree(interleaving_matrix(c.boundary()), c.inversions()); },
      [](Context& c) -> Verdict {
        if (same_up_to_rotation(c.boundary(), c.drawing().ends)) return std::nullopt;
        return "drawn boundary order differs from the combinatorial one";
      },
      embedding_sanity,
      canonical_roundtrip,
  };
  return list;
}

Verdict run_property(Context& c, std::size_t k) {
  try {
    return properties()[k](c);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

std::size_t property_index(const std::string& name) {
  const auto& names = property_names();
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

bool still_fails(const Scenario& s, std::size_t k, PlanFault fault) {
  if (!validate(s).ok()) return false;
  ValidatedScenario v(s);
  Context c(v, fault);
  return run_property(c, k).has_value();
}

struct Case {
  std::string source;
  std::uint64_t seed;
  Scenario scenario;
};

CheckReport run_cases(const std::vector<Case>& cases, PlanFault fault) {
  CheckReport report;
  report.cases = cases.size();
  for (const auto& name : property_names()) report.tallies.push_back({name, 0, 0});
  for (const auto& cs : cases) {
    ValidatedScenario v(cs.scenario);
    for (const auto& res : check_scenario(v, fault)) {
      auto& t = report.tallies[property_index(res.property)];
      if (!res.failure) {
        ++t.passed;
        continue;
      }
      ++t.failed;
      report.failures.push_back({cs.source, cs.seed, res.property, *res.failure,
                                 shrink(cs.scenario, res.property, fault)});
    }
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const CaseFailure& a, const CaseFailure& b) { return a.seed < b.seed; });
  return report;
}

}  // namespace

std::vector<PropertyResult> check_scenario(const ValidatedScenario& s, PlanFault fault) {
  Context c(s, fault);
  std::vector<PropertyResult> out;
  for (std::size_t k = 0; k < properties().size(); ++k) {
    out.push_back({property_names()[k], run_property(c, k)});
  }
  return out;
}

Scenario shrink(const Scenario& s, const std::string& property, PlanFault fault) {
  const std::size_t k = property_index(property);
  if (k >= property_names().size()) throw Error("unknown property '" + property + "'");
  Scenario cur = s;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < cur.orbits.size() && cur.orbits.size() > 1; ++i) {
      Scenario next = cur;
      next.orbits.erase(next.orbits.begin() + static_cast<long>(i));
      if (still_fails(next, k, fault)) {
        cur = std::move(next);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (std::size_t i = 0; i < cur.domains.size(); ++i) {
      Scenario next = cur;
      next.domains.erase(next.domains.begin() + static_cast<long>(i));
      if (still_fails(next, k, fault)) {
        cur = std::move(next);
        progress = true;
        break;
      }
    }
  }
  return cur;
}

CheckReport check(const GeneratorConfig& cfg, std::size_t n_cases, PlanFault fault) {
  if (n_cases < 1) throw Error("check needs at least one case");
  auto start = std::chrono::steady_clock::now();
  std::vector<Case> cases;
  for (std::size_t i = 0; i < n_cases; ++i) {
    GeneratorConfig g = cfg;
    g.seed = cfg.seed + i;
    cases.push_back({"seed " + std::to_string(g.seed), g.seed, generate_scenario(g)});
  }
  CheckReport report = run_cases(cases, fault);
  std::ostringstream h;
  h << "seeds " << cfg.seed << ".." << cfg.seed + n_cases - 1 << ", bounds (" << cfg.max_domains
    << "," << cfg.max_orbits << "," << cfg.max_boundary << "), weak_bias " << weak_bias_text(cfg);
  if (fault != PlanFault::None) h << ", fault exit-like-entry";
  report.header = h.str();
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CheckReport check_named(const std::vector<std::pair<std::string, Scenario>>& scenarios,
                        PlanFault fault) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Case> cases;
  for (const auto& [name, s] : scenarios) cases.push_back({name, 0, s});
  CheckReport report = run_cases(cases, fault);
  report.header = std::to_string(scenarios.size()) + " scenario files";
  if (fault != PlanFault::None) report.header += ", fault exit-like-entry";
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report(const CheckReport& r) {
  std::ostringstream out;
  out << "check: " << r.cases << " cases, " << r.header << "\n";
  std::size_t width = 0;
  for (const auto& t : r.tallies) width = std::max(width, t.property.size());
  for (const auto& t : r.tallies) {
    out << "  " << t.property << std::string(width + 2 - t.property.size(), ' ') << "pass "
        << t.passed << "  fail " << t.failed << "\n";
  }
  std::set<std::string> shown;
  for (const auto& f : r.failures) {
    out << "FAIL " << f.property << " (" << f.source << "): " << f.detail << "\n";
  }
  for (const auto& f : r.failures) {
    if (!shown.insert(f.property).second) continue;
    out << "minimal failing scenario for " << f.property << " (" << f.source << "):\n"
        << emit_scenario(f.minimal);
  }
  out << (r.ok() ? "all properties pass" : std::to_string(r.failures.size()) + " failures") << "\n";
  return out.str();
}

std::string format_report_json(const CheckReport& r) {
  nlohmann::json j;
  j["header"] = r.header;
  j["cases"] = r.cases;
  j["ok"] = r.ok();
  j["properties"] = nlohmann::json::array();
  for (const auto& t : r.tallies) {
    j["properties"].push_back({{"name", t.property}, {"passed", t.passed}, {"failed", t.failed}});
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) {
    j["failures"].push_back({{"source", f.source},
                             {"seed", f.seed},
                             {"property", f.property},
                             {"detail", f.detail},
                             {"minimal", nlohmann::json::parse(emit_scenario(f.minimal))}});
  }
  return j.dump(2) + "\n";
}

}  // namespace foliage
