#include "foliage/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "foliage/check.hpp"
#include "foliage/decompose.hpp"
#include "foliage/generator.hpp"
#include "foliage/geometry.hpp"
#include "foliage/realize.hpp"
#include "foliage/relations.hpp"
#include "json.hpp"

namespace foliage {

namespace {

using nlohmann::json;

// Raised for problems the user can fix by changing the invocation.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

std::string list(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out + "]";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void put_row(std::ostream& out, std::string line) {
  line.erase(line.find_last_not_of(' ') + 1);
  out << line << "\n";
}

std::string end_text(const BoundaryEnd& e) {
  return e.orbit + (e.kind == EndKind::Backward ? "-" : "+");
}

// Outcome of loading a scenario: either validated or a finished report.
struct Loaded {
  std::optional<ValidatedScenario> scenario;
  int status = 0;
};

Loaded load(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
  Scenario s;
  try {
    s = parse_scenario(read_text(path));
  } catch (const ParseError& e) {
    std::string where;
    if (e.line() > 0) where = " at line " + std::to_string(e.line()) + ", column " + std::to_string(e.column());
    if (as_json) {
      out << json{{"ok", false}, {"parse_error", e.what()}, {"line", e.line()}, {"column", e.column()}}.dump(2)
          << "\n";
    }
    err << path << ": parse error: " << e.what() << where << "\n";
    return {std::nullopt, 1};
  }
  auto report = validate(s);
  if (!report.ok()) {
    if (as_json) {
      json j{{"ok", false}, {"findings", json::array()}};
      for (const auto& f : report.findings) j["findings"].push_back({{"code", f.code}, {"message", f.message}});
      out << j.dump(2) << "\n";
    } else {
      for (const auto& f : report.findings) out << f.code << ": " << f.message << "\n";
      out << report.findings.size() << " findings\n";
    }
    return {std::nullopt, 1};
  }
  return {ValidatedScenario(std::move(s)), 0};
}

int cmd_validate(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
  auto l = load(path, as_json, out, err);
  if (!l.scenario) return l.status;
  if (as_json) {
    out << json{{"ok", true}, {"findings", json::array()}}.dump(2) << "\n";
  } else {
    out << "0 findings\n";
  }
  return 0;
}

json roles_json(const DomainRoles& r) {
  return {{"alpha", r.alpha}, {"omega", r.omega}, {"in", r.in}, {"out", r.out}};
}

int cmd_decompose(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
  auto l = load(path, as_json, out, err);
  if (!l.scenario) return l.status;
  auto r = reduce(*l.scenario);
  if (as_json) {
    json j{{"maxdomains", json::array()}, {"critical", r.critical}, {"forest_edges", json::array()}};
    for (const auto& m : r.maxdomains) {
      j["maxdomains"].push_back({{"id", m.id},
                                 {"chain", m.chain},
                                 {"left", m.left},
                                 {"right", m.right},
                                 {"crossers", m.crossers},
                                 {"shed", m.shed},
                                 {"roles", roles_json(r.roles.at(m.id))}});
    }
    for (const auto& e : r.forest_edges) {
      j["forest_edges"].push_back({{"from", e.from}, {"leaf", e.leaf}, {"to", e.to}});
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "maxdomains:\n";
  for (const auto& m : r.maxdomains) {
    out << "  " << m.id << " chain " << list(m.chain) << " right " << list(m.right) << " left "
        << list(m.left) << " crossers " << list(m.crossers);
    if (!m.shed.empty()) out << " shed " << list(m.shed);
    out << "\n";
  }
  out << "critical: " << list(r.critical) << "\n";
  out << "forest edges:\n";
  for (const auto& e : r.forest_edges) out << "  " << e.from << " -" << e.leaf << "-> " << e.to << "\n";
  out << "roles:\n";
  for (const auto& line : role_legend(r)) out << "  " << line << "\n";
  return 0;
}

std::string short_verdict(const RelationVerdict& v) {
  static const char* const dir[] = {"<", ">", "~", "?"};
  if (v.clause == Clause::Disjoint) return "?";
  if (v.clause == Clause::Asymptotic) return "=";
  return dir[static_cast<int>(v.direction)] + to_string(v.clause);
}

int cmd_relations(const std::string& path, const std::vector<std::string>& pair, bool as_json,
                  std::ostream& out, std::ostream& err) {
  auto l = load(path, as_json, out, err);
  if (!l.scenario) return l.status;
  const auto& s = *l.scenario;
  std::vector<OrbitId> ids;
  for (const auto& o : s.scenario().orbits) ids.push_back(o.id);
  if (!pair.empty()) {
    for (const auto& id : pair) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown orbit '" + id + "'");
    }
    const auto &a = pair[0], &b = pair[1];
    auto L = compare_left(s, a, b), R = compare_right(s, a, b);
    bool weak = weak_transverse(s, a, b);
    if (as_json) {
      out << json{{"pair", pair},
                  {"left", to_string(L)},
                  {"right", to_string(R)},
                  {"plus_asymptotic", plus_asymptotic(s, a, b)},
                  {"minus_asymptotic", minus_asymptotic(s, a, b)},
                  {"weak", weak},
                  {"classic", classic_transverse(s, a, b)}}
                 .dump(2)
          << "\n";
    } else {
      out << "L: " << to_string(L) << "; R: " << to_string(R) << "; weak: " << (weak ? "true" : "false")
          << "\n";
    }
    return 0;
  }
  using Cell = std::function<std::string(const OrbitId&, const OrbitId&)>;
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  const std::vector<std::pair<std::string, Cell>> tables = {
      {"left", [&](const OrbitId& a, const OrbitId& b) { return to_string(compare_left(s, a, b)); }},
      {"right", [&](const OrbitId& a, const OrbitId& b) { return to_string(compare_right(s, a, b)); }},
      {"plus_asymptotic", [&](const OrbitId& a, const OrbitId& b) { return flag(plus_asymptotic(s, a, b)); }},
      {"minus_asymptotic", [&](const OrbitId& a, const OrbitId& b) { return flag(minus_asymptotic(s, a, b)); }},
      {"weak", [&](const OrbitId& a, const OrbitId& b) { return flag(weak_transverse(s, a, b)); }},
      {"classic", [&](const OrbitId& a, const OrbitId& b) { return flag(classic_transverse(s, a, b)); }},
  };
  if (as_json) {
    json j{{"orbits", ids}};
    for (const auto& [name, cell] : tables) {
      json rows = json::array();
      for (const auto& a : ids) {
        json row = json::array();
        for (const auto& b : ids) {
          auto v = cell(a, b);
          if (v == "0" || v == "1") {
            row.push_back(v == "1");
          } else {
            row.push_back(v);
          }
        }
        rows.push_back(row);
      }
      j[name] = rows;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  std::size_t width = 0;
  for (const auto& id : ids) width = std::max(width, id.size());
  for (const auto& [name, cell] : tables) {
    const bool verdicts = name == "left" || name == "right";
    std::vector<std::vector<std::string>> rows;
    std::size_t col = width;
    for (const auto& a : ids) {
      rows.emplace_back();
      for (const auto& b : ids) {
        auto v = verdicts ? short_verdict(name == "left" ? compare_left(s, a, b) : compare_right(s, a, b))
                          : cell(a, b);
        col = std::max(col, v.size());
        rows.back().push_back(v);
      }
    }
    out << name << ":\n";
    std::string head(width + 2, ' ');
    for (const auto& b : ids) head += ' ' + pad(b, col);
    put_row(out, head);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::string line = "  " + pad(ids[i], width);
      for (const auto& v : rows[i]) line += ' ' + pad(v, col);
      put_row(out, line);
    }
  }
  out << "cells read row vs column: < before, > after, ~ equivalent by clause, = asymptotic, ? incomparable\n";
  return 0;
}

int cmd_diagram(const std::string& path, const std::string& format, const std::string& svg,
                const std::string& chord, bool as_json, std::ostream& out, std::ostream& err) {
  auto l = load(path, as_json, out, err);
  if (!l.scenario) return l.status;
  const auto& s = *l.scenario;
  auto r = reduce(s);
  auto plans = port_plans(s, r);
  auto cm = crossing_matrix(s, r);
  auto b = boundary_order(s, r);
  if (!svg.empty()) {
    auto lay = layout(s, r, plans);
    auto lines = route(lay);
    write_text(svg, emit_svg(lay, lines, {12.0, path, role_legend(r)}));
  }
  if (!chord.empty()) write_text(chord, emit_chord_svg(chord_diagram(b)));

  if (as_json) {
    json j;
    if (format == "boundary") {
      json comps = json::array();
      for (std::size_t c = 0; c < b.component_starts.size(); ++c) {
        std::size_t end = c + 1 < b.component_starts.size() ? b.component_starts[c + 1] : b.ends.size();
        json ends = json::array();
        for (std::size_t k = b.component_starts[c]; k < end; ++k) {
          ends.push_back({{"orbit", b.ends[k].orbit},
                          {"end", b.ends[k].kind == EndKind::Backward ? "backward" : "forward"}});
        }
        comps.push_back(ends);
      }
      j = {{"boundary", comps}};
    } else {
      json counts = json::array(), witnesses = json::array();
      for (std::size_t i = 0; i < cm.size(); ++i) {
        json row = json::array(), wrow = json::array();
        for (std::size_t k = 0; k < cm.size(); ++k) {
          row.push_back(cm.at(i, k));
          wrow.push_back(cm.witness[i * cm.size() + k]);
        }
        counts.push_back(row);
        witnesses.push_back(wrow);
      }
      j = {{"orbits", cm.orbits}, {"crossings", counts}, {"witnesses", witnesses}};
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  if (format == "boundary") {
    for (std::size_t c = 0; c < b.component_starts.size(); ++c) {
      std::size_t end = c + 1 < b.component_starts.size() ? b.component_starts[c + 1] : b.ends.size();
      out << "component " << c + 1 << ":";
      for (std::size_t k = b.component_starts[c]; k < end; ++k) out << ' ' << end_text(b.ends[k]);
      out << "\n";
    }
    return 0;
  }
  std::size_t width = 0;
  for (const auto& id : cm.orbits) width = std::max(width, id.size());
  std::string head(width, ' ');
  for (const auto& id : cm.orbits) head += ' ' + pad(id, width);
  put_row(out, head);
  for (std::size_t i = 0; i < cm.size(); ++i) {
    std::string line = pad(cm.orbits[i], width);
    for (std::size_t k = 0; k < cm.size(); ++k) line += ' ' + pad(std::to_string(cm.at(i, k)), width);
    put_row(out, line);
  }
  bool any = false;
  for (std::size_t i = 0; i < cm.size(); ++i) {
    for (std::size_t k = i + 1; k < cm.size(); ++k) {
      if (cm.at(i, k) == 0) continue;
      if (!any) out << "witnesses:\n";
      any = true;
      out << "  " << cm.orbits[i] << " x " << cm.orbits[k] << " in " << cm.witness[i * cm.size() + k] << "\n";
    }
  }
  return 0;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("FOLIAGE_SEED");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    auto seed = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return seed;
  } catch (const std::exception&) {
    throw UsageError("FOLIAGE_SEED must be an unsigned integer, got '" + std::string(v) + "'");
  }
}

PlanFault parse_fault(const std::string& name) {
  if (name == "none") return PlanFault::None;
  if (name == "exit-like-entry") return PlanFault::ExitLikeEntry;
  throw UsageError("unknown fault '" + name + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"foliage: orbit combinatorics for transverse foliations"};
  app.name("foliage");
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  auto* decompose_cmd = app.add_subcommand("decompose", "Maximal domains, critical leaves, forest and roles");
  auto* relations_cmd = app.add_subcommand("relations", "Sided preorders and transverse intersections");
  auto* diagram_cmd = app.add_subcommand("diagram", "Crossing matrix, boundary order and drawings");
  for (auto* cmd : {validate_cmd, decompose_cmd, relations_cmd, diagram_cmd}) {
    cmd->add_option("file", file, "Scenario JSON")->required();
    cmd->add_flag("--json", as_json, "Machine-readable output");
  }
  std::vector<std::string> pair;
  relations_cmd->add_option("--pair", pair, "Restrict to two orbits")->expected(2);
  std::string format = "matrix", svg, chord;
  diagram_cmd->add_option("--format", format, "matrix or boundary")
      ->check(CLI::IsMember({"matrix", "boundary"}));
  diagram_cmd->add_option("--svg", svg, "Write the layout drawing");
  diagram_cmd->add_option("--chord", chord, "Write the chord diagram");

  GeneratorConfig cfg;
  std::string bias = "1/2", fault = "none", output;
  std::size_t cases = 200;
  std::vector<std::string> files;
  auto* check_cmd = app.add_subcommand("check", "Run the property suite");
  auto* generate_cmd = app.add_subcommand("generate", "Draw a random scenario");
  for (auto* cmd : {check_cmd, generate_cmd}) {
    cmd->add_option("--seed", cfg.seed, "Seed (FOLIAGE_SEED overrides)");
    cmd->add_option("--max-domains", cfg.max_domains)->check(CLI::PositiveNumber);
    cmd->add_option("--max-orbits", cfg.max_orbits)->check(CLI::PositiveNumber);
    cmd->add_option("--max-boundary", cfg.max_boundary)->check(CLI::NonNegativeNumber);
    cmd->add_option("--weak-bias", bias, "Probability p/q of steering toward shared paths and extreme cuts");
    cmd->add_flag("--json", as_json, "Machine-readable output");
  }
  check_cmd->add_option("--cases", cases, "Number of generated cases")->check(CLI::PositiveNumber);
  check_cmd->add_option("--fault", fault, "Harness self-test: none or exit-like-entry");
  check_cmd->add_option("files", files, "Check these scenario files instead of generated ones");
  generate_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "foliage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(file, as_json, out, err);
    if (decompose_cmd->parsed()) return cmd_decompose(file, as_json, out, err);
    if (relations_cmd->parsed()) return cmd_relations(file, pair, as_json, out, err);
    if (diagram_cmd->parsed()) return cmd_diagram(file, format, svg, chord, as_json, out, err);

    if (auto seed = env_seed()) cfg.seed = *seed;
    try {
      parse_weak_bias(bias, cfg);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (generate_cmd->parsed()) {
      auto text = emit_scenario(generate_scenario(cfg));
      if (output.empty()) {
        out << text;
      } else {
        write_text(output, text);
      }
      return 0;
    }
    PlanFault f = parse_fault(fault);
    CheckReport report;
    if (files.empty()) {
      report = check(cfg, cases, f);
    } else {
      std::vector<std::pair<std::string, Scenario>> named;
      for (const auto& path : files) {
        auto s = parse_scenario(read_text(path));
        auto v = validate(s);
        if (!v.ok()) throw UsageError(path + ": " + v.findings.front().code + ": " + v.findings.front().message);
        named.emplace_back(path, std::move(s));
      }
      report = check_named(named, f);
    }
    out << (as_json ? format_report_json(report) : format_report(report));
    char elapsed[64];
    std::snprintf(elapsed, sizeof elapsed, "%.3f", report.elapsed_seconds);
    err << "elapsed " << elapsed << " s\n";
    return report.ok() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "foliage: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "foliage: parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "foliage: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace foliage
