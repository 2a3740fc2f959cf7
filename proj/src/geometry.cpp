#include "foliage/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

namespace foliage {

namespace {

constexpr long kSlot = 4;     // vertical distance between neighbouring ports
constexpr long kColumn = 4;   // gap between a box and the stacks beside it
constexpr long kWidth = 8;    // box width
constexpr long kComponentGap = 8;
constexpr long kFrameMargin = 2;

struct NodeGeo {
  long x0 = 0, x1 = kWidth, y0 = 0, y1 = 0;
  std::vector<std::vector<long>> west, east;  // slot ys
};

// A laid-out subtree. `parent_ys` are the strand ys of the link to the
// parent, in the subtree's current position.
struct Sub {
  std::vector<std::size_t> nodes;
  long left = 0, right = 0, top = 0, bottom = 0;
  std::vector<long> parent_ys;
};

class Placer {
 public:
  Placer(const Embedding& e, std::vector<NodeGeo>& geo) : e_(e), geo_(geo) {}

  Sub place(std::size_t node, long parent_edge) {
    const auto& n = e_.nodes[node];
    auto& g = geo_[node];
    g.west.assign(n.west.size(), {});
    g.east.assign(n.east.size(), {});
    Sub sub;
    sub.nodes = {node};
    std::vector<Sub> west_children, east_children;
    bool parent_west = false;

    for (bool west : {true, false}) {
      const auto& slots = west ? n.west : n.east;
      auto& ys = west ? g.west : g.east;
      long port = 0;
      std::optional<long> rect_limit;
      auto top_for = [&](long above) { return rect_limit ? std::min(port + above, *rect_limit) : port + above; };
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& slot = slots[k];
        if (slot.kind != SlotKind::Link) {
          ys[k] = {port};
          port -= kSlot;
          continue;
        }
        if (static_cast<long>(slot.edge) == parent_edge) {
          long top = top_for(1);
          for (std::size_t i = 0; i < slot.orbits.size(); ++i) {
            ys[k].push_back(top - 1 - kSlot * static_cast<long>(i));
          }
          sub.parent_ys = ys[k];
          parent_west = west;
          port = ys[k].back() - kSlot;
          rect_limit = ys[k].back() - 1 - kSlot;
          continue;
        }
        const auto& edge = e_.edges[slot.edge];
        Sub child = place(edge.from == node ? edge.to : edge.from, static_cast<long>(slot.edge));
        long top = top_for(child.top - child.parent_ys.front());
        shift(child, 0, top - child.top);
        ys[k] = child.parent_ys;
        port = ys[k].back() - kSlot;
        rect_limit = child.bottom - kSlot;
        (west ? west_children : east_children).push_back(std::move(child));
      }
    }

    long hi = 0, lo = 0;
    bool any = false;
    for (const auto* side : {&g.west, &g.east}) {
      for (const auto& ys : *side) {
        for (long y : ys) {
          hi = any ? std::max(hi, y) : y;
          lo = any ? std::min(lo, y) : y;
          any = true;
        }
      }
    }
    g.x0 = 0;
    g.x1 = kWidth;
    g.y1 = hi + 2;
    g.y0 = lo - 2;
    sub.left = parent_edge >= 0 && parent_west ? -kColumn : 0;
    sub.right = parent_edge >= 0 && !parent_west ? kWidth + kColumn : kWidth;
    sub.top = g.y1;
    sub.bottom = g.y0;
    for (auto& c : west_children) {
      shift(c, -kColumn - c.right, 0);
      absorb(sub, c);
    }
    for (auto& c : east_children) {
      shift(c, kWidth + kColumn - c.left, 0);
      absorb(sub, c);
    }
    return sub;
  }

  void shift(Sub& s, long dx, long dy) {
    for (auto node : s.nodes) {
      auto& g = geo_[node];
      g.x0 += dx;
      g.x1 += dx;
      g.y0 += dy;
      g.y1 += dy;
      for (auto* side : {&g.west, &g.east}) {
        for (auto& ys : *side) {
          for (auto& y : ys) y += dy;
        }
      }
    }
    s.left += dx;
    s.right += dx;
    s.top += dy;
    s.bottom += dy;
    for (auto& y : s.parent_ys) y += dy;
  }

 private:
  static void absorb(Sub& into, const Sub& c) {
    into.nodes.insert(into.nodes.end(), c.nodes.begin(), c.nodes.end());
    into.left = std::min(into.left, c.left);
    into.right = std::max(into.right, c.right);
    into.top = std::max(into.top, c.top);
    into.bottom = std::min(into.bottom, c.bottom);
  }

  const Embedding& e_;
  std::vector<NodeGeo>& geo_;
};

}  // namespace

Layout layout(const Embedding& e) {
  Layout l;
  l.embedding = e;
  std::vector<NodeGeo> geo(e.nodes.size());
  Placer placer(e, geo);
  std::vector<bool> placed(e.nodes.size(), false);
  long x = 0;
  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    if (placed[i]) continue;
    Sub s = placer.place(i, -1);
    placer.shift(s, x - s.left, -s.top);
    x = s.right + kComponentGap;
    for (auto n : s.nodes) placed[n] = true;
    l.components.push_back(s.nodes);
  }

  std::map<OrbitId, Rational> nudge;
  const long n = static_cast<long>(e.orbits.size());
  for (long k = 0; k < n; ++k) nudge[e.orbits[k]] = Rational(k + 1, 4 * (n + 1));

  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    const auto& node = e.nodes[i];
    const auto& g = geo[i];
    Box b;
    b.id = node.id;
    b.x0 = g.x0;
    b.x1 = g.x1;
    b.y0 = g.y0;
    b.y1 = g.y1;
    for (bool west : {true, false}) {
      const auto& slots = west ? node.west : node.east;
      const auto& ys = west ? g.west : g.east;
      auto& out = west ? b.west : b.east;
      auto& ports = west ? b.west_port : b.east_port;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        SlotGeometry sg;
        for (long y : ys[k]) sg.ys.push_back(y);
        for (std::size_t j = 0; j < slots[k].orbits.size(); ++j) {
          const auto& o = slots[k].orbits[j];
          ports[o] = sg.ys[j] + nudge.at(o);
        }
        out.push_back(std::move(sg));
      }
    }
    l.boxes.push_back(std::move(b));
  }

  for (std::size_t k = 0; k < e.edges.size(); ++k) {
    const auto& edge = e.edges[k];
    std::vector<long> from_ys, to_ys;
    for (std::size_t j = 0; j < e.nodes[edge.from].east.size(); ++j) {
      const auto& slot = e.nodes[edge.from].east[j];
      if (slot.kind == SlotKind::Link && slot.edge == k) from_ys = geo[edge.from].east[j];
    }
    for (std::size_t j = 0; j < e.nodes[edge.to].west.size(); ++j) {
      const auto& slot = e.nodes[edge.to].west[j];
      if (slot.kind == SlotKind::Link && slot.edge == k) to_ys = geo[edge.to].west[j];
    }
    if (from_ys.empty() || from_ys != to_ys || geo[edge.from].x1 >= geo[edge.to].x0) {
      throw Error("internal error: corridor " + edge.leaf + " is misaligned");
    }
    l.corridors.push_back({k, edge.leaf, geo[edge.from].x1, from_ys.back() - 1,
                           geo[edge.to].x0, from_ys.front() + 1});
  }

  bool first = true;
  auto extend = [&](const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
    if (first || x0 < l.min_x) l.min_x = x0;
    if (first || y0 < l.min_y) l.min_y = y0;
    if (first || x1 > l.max_x) l.max_x = x1;
    if (first || y1 > l.max_y) l.max_y = y1;
    first = false;
  };
  for (const auto& b : l.boxes) extend(b.x0, b.y0, b.x1, b.y1);
  for (const auto& c : l.corridors) extend(c.x0, c.y0, c.x1, c.y1);
  return l;
}

Layout layout(const ValidatedScenario& s, const ReducedStructure& r,
              const std::map<std::string, PortPlan>& plans) {
  return layout(embed(s, r, plans));
}

namespace {

enum class FeatureKind { Corner, Stub, Link };

struct Feature {
  FeatureKind kind;
  Point at;           // Corner, Stub
  BoundaryEnd end;    // Stub
  std::size_t edge = 0;  // Link
  bool west = false;     // Link
};

// Counterclockwise outline features of one box.
std::vector<Feature> box_features(const Layout& l, std::size_t i) {
  const auto& node = l.embedding.nodes[i];
  const auto& b = l.boxes[i];
  std::vector<Feature> f;
  f.push_back({FeatureKind::Corner, {b.x0, b.y1}, {}});
  for (const auto& slot : node.west) {
    if (slot.kind == SlotKind::Stub) {
      f.push_back({FeatureKind::Stub, {b.x0, b.west_port.at(slot.orbits[0])},
                   {slot.orbits[0], EndKind::Backward}});
    } else if (slot.kind == SlotKind::Link) {
      f.push_back({FeatureKind::Link, {}, {}, slot.edge, true});
    }
  }
  f.push_back({FeatureKind::Corner, {b.x0, b.y0}, {}});
  f.push_back({FeatureKind::Corner, {b.x1, b.y0}, {}});
  for (auto it = node.east.rbegin(); it != node.east.rend(); ++it) {
    if (it->kind == SlotKind::Stub) {
      f.push_back({FeatureKind::Stub, {b.x1, b.east_port.at(it->orbits[0])},
                   {it->orbits[0], EndKind::Forward}});
    } else if (it->kind == SlotKind::Link) {
      f.push_back({FeatureKind::Link, {}, {}, it->edge, false});
    }
  }
  f.push_back({FeatureKind::Corner, {b.x1, b.y1}, {}});
  return f;
}

struct OutlineEvent {
  bool terminal;
  Point at;
  BoundaryEnd end;
};

// Counterclockwise walk around the union of the component's boxes and
// corridors, starting at the root's top-left corner.
std::vector<OutlineEvent> outline(const Layout& l, std::size_t root) {
  std::vector<std::vector<Feature>> feats(l.boxes.size());
  for (std::size_t i = 0; i < l.boxes.size(); ++i) feats[i] = box_features(l, i);
  std::vector<OutlineEvent> out;
  auto vertex = [&](Rational x, Rational y) { out.push_back({false, {std::move(x), std::move(y)}, {}}); };

  std::function<void(std::size_t, long)> walk = [&](std::size_t node, long entered) {
    const auto& f = feats[node];
    const auto& b = l.boxes[node];
    const std::size_t n = f.size();
    const std::size_t begin = entered < 0 ? 0 : static_cast<std::size_t>(entered) + 1;
    const std::size_t count = entered < 0 ? n : n - 1;
    for (std::size_t k = 0; k < count; ++k) {
      const auto& feature = f[(begin + k) % n];
      if (feature.kind == FeatureKind::Corner) {
        vertex(feature.at.x, feature.at.y);
        continue;
      }
      if (feature.kind == FeatureKind::Stub) {
        out.push_back({true, feature.at, feature.end});
        continue;
      }
      const auto& edge = l.embedding.edges[feature.edge];
      const auto& c = l.corridors[feature.edge];
      std::size_t other = feature.west ? edge.from : edge.to;
      long at = -1;
      for (std::size_t j = 0; j < feats[other].size(); ++j) {
        const auto& g = feats[other][j];
        if (g.kind == FeatureKind::Link && g.edge == feature.edge) at = static_cast<long>(j);
      }
      if (feature.west) {
        vertex(b.x0, c.y1);
        vertex(c.x0, c.y1);
        walk(other, at);
        vertex(c.x0, c.y0);
        vertex(b.x0, c.y0);
      } else {
        vertex(b.x1, c.y0);
        vertex(c.x1, c.y0);
        walk(other, at);
        vertex(c.x1, c.y1);
        vertex(b.x1, c.y1);
      }
    }
  };
  walk(root, -1);
  return out;
}

Point offset_vertex(const std::vector<Point>& v, std::size_t j, const Rational& d) {
  const std::size_t n = v.size();
  auto normal = [&](std::size_t i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    int dx = (b.x - a.x).sign();
    int dy = (b.y - a.y).sign();
    return std::pair<long, long>{dy, -dx};
  };
  auto [px, py] = normal((j + n - 1) % n);
  auto [qx, qy] = normal(j);
  return {v[j].x + d * Rational(px + qx), v[j].y + d * Rational(py + qy)};
}

}  // namespace

PolylineSet route(const Layout& l) {
  const auto& e = l.embedding;
  PolylineSet p;
  p.frame_x0 = l.min_x - kFrameMargin;
  p.frame_x1 = l.max_x + kFrameMargin;
  p.frame_y0 = l.min_y - kFrameMargin;
  p.frame_y1 = l.max_y + kFrameMargin;
  for (const auto& b : l.boxes) {
    p.boxes.push_back({b.id, {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}}});
  }

  // stub paths: port first, frame last
  std::map<std::pair<OrbitId, EndKind>, std::vector<Point>> stubs;
  std::vector<std::pair<Rational, BoundaryEnd>> frame_ends;
  p.ends.orbits = e.orbits;
  for (const auto& component : l.components) {
    auto events = outline(l, component.front());
    std::vector<Point> v;
    for (const auto& ev : events) {
      if (!ev.terminal) v.push_back(ev.at);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      if ((a.x == b.x) == (a.y == b.y)) throw Error("internal error: outline is not rectilinear");
    }
    // cut corner: rightmost vertex among the lowest
    std::size_t cut = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].y < v[cut].y || (v[i].y == v[cut].y && v[i].x > v[cut].x)) cut = i;
    }
    // event list rotated to start at the cut corner
    std::size_t vertex_seen = 0, start = 0;
    for (std::size_t k = 0; k < events.size(); ++k) {
      if (events[k].terminal) continue;
      if (vertex_seen++ == cut) start = k;
    }
    std::rotate(events.begin(), events.begin() + static_cast<long>(start), events.end());
    std::rotate(v.begin(), v.begin() + static_cast<long>(cut), v.end());

    std::size_t terminals = 0;
    for (const auto& ev : events) terminals += ev.terminal ? 1 : 0;
    std::size_t rank = 0;
    long edge = -1;
    for (const auto& ev : events) {
      if (!ev.terminal) {
        ++edge;
        continue;
      }
      ++rank;
      Rational d(static_cast<long>(rank), 2 * static_cast<long>(terminals + 1));
      std::size_t j = static_cast<std::size_t>(edge);
      const auto& a = v[j];
      const auto& b = v[(j + 1) % v.size()];
      Rational nx((b.y - a.y).sign()), ny(-(b.x - a.x).sign());
      std::vector<Point> path{ev.at, {ev.at.x + d * nx, ev.at.y + d * ny}};
      for (std::size_t i = j + 1; i-- > 0;) path.push_back(offset_vertex(v, i, d));
      path.push_back({path.back().x, p.frame_y0});
      frame_ends.push_back({path.back().x, ev.end});
      stubs[{ev.end.orbit, ev.end.kind}] = std::move(path);
    }
  }

  std::sort(frame_ends.begin(), frame_ends.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [x, end] : frame_ends) p.ends.ends.push_back(end);
  // components occupy disjoint x ranges in layout order
  std::size_t offset = 0;
  for (const auto& component : l.components) {
    p.ends.component_starts.push_back(offset);
    for (auto node : component) {
      for (const auto& slot : e.nodes[node].west) offset += slot.kind == SlotKind::Stub ? 1 : 0;
      for (const auto& slot : e.nodes[node].east) offset += slot.kind == SlotKind::Stub ? 1 : 0;
    }
  }

  for (const auto& id : e.orbits) {
    const auto& route_nodes = e.routes.at(id);
    Polyline line;
    line.orbit = id;
    auto back = stubs.at({id, EndKind::Backward});
    std::reverse(back.begin(), back.end());
    line.points = back;
    line.first_port = line.points.size() - 1;
    for (std::size_t k = 0; k < route_nodes.size(); ++k) {
      const auto& b = l.boxes[route_nodes[k]];
      if (k > 0) {
        Point in{b.x0, b.west_port.at(id)};
        if (in.y != line.points.back().y) throw Error("internal error: corridor strand bends");
        line.points.push_back(in);
      }
      line.points.push_back({b.x1, b.east_port.at(id)});
    }
    line.last_port = line.points.size() - 1;
    const auto& fwd = stubs.at({id, EndKind::Forward});
    line.points.insert(line.points.end(), fwd.begin() + 1, fwd.end());
    p.lines.push_back(std::move(line));
  }
  return p;
}

namespace {

bool on_segment(const Point& a, const Point& b, const Point& c) {
  // c collinear with ab: inside the bounding box
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

bool proper_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

Point intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
  // a + t (b - a) with t from the cross products
  Rational rx = b.x - a.x, ry = b.y - a.y, sx = d.x - c.x, sy = d.y - c.y;
  Rational denom = rx * sy - ry * sx;
  Rational t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
  return {a.x + t * rx, a.y + t * ry};
}

struct Segment {
  std::size_t line;
  std::size_t index;
  double x0, x1, y0, y1;
};

constexpr double kSlack = 1e-7;

// Candidate pairs whose bounding boxes overlap (with slack), found by a
// sweep over x. Exact tests decide the rest.
template <class Visit>
void candidate_pairs(const std::vector<std::vector<Point>>& lines, Visit visit) {
  std::vector<Segment> segs;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& pts = lines[li];
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      double ax = pts[k].x.to_double(), bx = pts[k + 1].x.to_double();
      double ay = pts[k].y.to_double(), by = pts[k + 1].y.to_double();
      segs.push_back({li, k, std::min(ax, bx) - kSlack, std::max(ax, bx) + kSlack,
                      std::min(ay, by) - kSlack, std::max(ay, by) + kSlack});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return std::tie(a.x0, a.line, a.index) < std::tie(b.x0, b.line, b.index);
  });
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size() && segs[j].x0 <= segs[i].x1; ++j) {
      if (segs[j].y0 > segs[i].y1 || segs[i].y0 > segs[j].y1) continue;
      visit(segs[i], segs[j]);
    }
  }
}

}  // namespace

bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool is_simple(const std::vector<Point>& line) {
  bool simple = true;
  candidate_pairs({line}, [&](const Segment& s, const Segment& t) {
    if (!simple) return;
    std::size_t i = std::min(s.index, t.index), j = std::max(s.index, t.index);
    const auto &a = line[i], &b = line[i + 1], &c = line[j], &d = line[j + 1];
    if (j == i + 1) {
      // shared vertex b == c; fold-back would put d on segment ab
      if (orientation(a, b, d) == 0 && on_segment(a, b, d)) simple = false;
      if (orientation(c, d, a) == 0 && on_segment(c, d, a)) simple = false;
      return;
    }
    if (segments_meet(a, b, c, d)) simple = false;
  });
  return simple;
}

std::vector<CrossingPoint> crossing_points(const PolylineSet& p) {
  std::vector<std::vector<Point>> lines;
  for (const auto& l : p.lines) lines.push_back(l.points);
  std::vector<CrossingPoint> out;
  candidate_pairs(lines, [&](const Segment& s, const Segment& t) {
    if (s.line == t.line) return;
    const auto& L = lines[s.line];
    const auto& M = lines[t.line];
    const auto &a = L[s.index], &b = L[s.index + 1], &c = M[t.index], &d = M[t.index + 1];
    if (proper_cross(a, b, c, d)) {
      CrossingPoint cp;
      std::size_t i = std::min(s.line, t.line), j = std::max(s.line, t.line);
      cp.a = p.lines[i].orbit;
      cp.b = p.lines[j].orbit;
      cp.at = intersection(a, b, c, d);
      for (const auto& [id, corners] : p.boxes) {
        if (corners[0].x < cp.at.x && cp.at.x < corners[2].x && corners[0].y < cp.at.y &&
            cp.at.y < corners[2].y) {
          cp.box = id;
        }
      }
      out.push_back(std::move(cp));
    } else if (segments_meet(a, b, c, d)) {
      throw DegeneracyError("segments of orbits '" + p.lines[s.line].orbit + "' and '" +
                            p.lines[t.line].orbit + "' touch or overlap");
    }
  });
  std::sort(out.begin(), out.end(), [](const CrossingPoint& x, const CrossingPoint& y) {
    return std::tie(x.a, x.b, x.at.x, x.at.y) < std::tie(y.a, y.b, y.at.x, y.at.y);
  });
  return out;
}

CrossingMatrix exact_crossings(const PolylineSet& p) {
  std::vector<OrbitId> ids;
  for (const auto& l : p.lines) ids.push_back(l.orbit);
  CrossingMatrix cm(ids);
  for (const auto& c : crossing_points(p)) cm.add(cm.index(c.a), cm.index(c.b), 1, c.box);
  return cm;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

}  // namespace

std::string emit_svg(const Layout& l, const PolylineSet& p, const SvgOptions& options) {
  const double s = options.scale;
  const double margin = 20.0;
  const double fx0 = p.frame_x0.to_double(), fx1 = p.frame_x1.to_double();
  const double fy0 = p.frame_y0.to_double(), fy1 = p.frame_y1.to_double();
  const double legend_h = 16.0 * static_cast<double>(options.legend.size() + (options.title.empty() ? 0 : 1));
  const double width = (fx1 - fx0) * s + 2 * margin;
  const double height = (fy1 - fy0) * s + 2 * margin + legend_h;
  auto X = [&](const Rational& x) { return num((x.to_double() - fx0) * s + margin); };
  auto Y = [&](const Rational& y) { return num((fy1 - y.to_double()) * s + margin + legend_h); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
      << "\">\n";
  out << "<style>.box{fill:#f4f4f0;stroke:#333;stroke-width:1}"
         ".corridor{fill:#e8e8e0;stroke:none}.frame{fill:none;stroke:#999;stroke-dasharray:4 3}"
         ".leaf{stroke:#555;stroke-width:2}.orbit{fill:none;stroke-width:1.5}"
         ".crossing{fill:none;stroke:#000;stroke-width:1}text{font-family:monospace;font-size:10px}"
         "</style>\n";
  double ty = margin;
  if (!options.title.empty()) {
    out << "<text x=\"" << num(margin) << "\" y=\"" << num(ty) << "\">" << escape(options.title)
        << "</text>\n";
    ty += 16.0;
  }
  for (const auto& line : options.legend) {
    out << "<text class=\"legend\" x=\"" << num(margin) << "\" y=\"" << num(ty) << "\">"
        << escape(line) << "</text>\n";
    ty += 16.0;
  }
  out << "<polygon class=\"frame\" points=\"" << X(p.frame_x0) << ',' << Y(p.frame_y0) << ' '
      << X(p.frame_x1) << ',' << Y(p.frame_y0) << ' ' << X(p.frame_x1) << ',' << Y(p.frame_y1)
      << ' ' << X(p.frame_x0) << ',' << Y(p.frame_y1) << "\"/>\n";
  for (const auto& c : l.corridors) {
    out << "<polygon class=\"corridor\" points=\"" << X(c.x0) << ',' << Y(c.y0) << ' ' << X(c.x1)
        << ',' << Y(c.y0) << ' ' << X(c.x1) << ',' << Y(c.y1) << ' ' << X(c.x0) << ','
        << Y(c.y1) << "\"/>\n";
  }
  for (std::size_t i = 0; i < l.boxes.size(); ++i) {
    const auto& b = l.boxes[i];
    const auto& node = l.embedding.nodes[i];
    out << "<rect class=\"box\" x=\"" << X(b.x0) << "\" y=\"" << Y(b.y1) << "\" width=\""
        << num((b.x1 - b.x0).to_double() * s) << "\" height=\""
        << num((b.y1 - b.y0).to_double() * s) << "\"/>\n";
    out << "<text x=\"" << X(b.x0) << "\" y=\"" << Y(b.y1 + 1) << "\">" << escape(b.id)
        << "</text>\n";
    for (bool west : {true, false}) {
      const auto& slots = west ? node.west : node.east;
      const auto& geo = west ? b.west : b.east;
      const Rational x = west ? b.x0 : b.x1;
      std::size_t index = 0;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k].kind == SlotKind::Stub) continue;
        const Rational top = geo[k].ys.front() + Rational(1, 2);
        const Rational bottom = geo[k].ys.back() - Rational(1, 2);
        out << "<line class=\"leaf\" x1=\"" << X(x) << "\" y1=\"" << Y(top) << "\" x2=\"" << X(x)
            << "\" y2=\"" << Y(bottom) << "\"/>\n";
        const Rational lx = west ? x - Rational(3, 2) : x + Rational(1, 4);
        out << "<text class=\"leaf-label\" x=\"" << X(lx) << "\" y=\"" << Y(top) << "\">"
            << escape(slots[k].leaf) << ' ' << index << "</text>\n";
        ++index;
      }
    }
  }
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& line = p.lines[i];
    out << "<path class=\"orbit\" stroke=\"" << kPalette[i % 10] << "\" d=\"";
    for (std::size_t k = 0; k < line.points.size(); ++k) {
      out << (k ? " L" : "M") << X(line.points[k].x) << ' ' << Y(line.points[k].y);
    }
    out << "\"><title>" << escape(line.orbit) << "</title></path>\n";
  }
  for (const auto& c : crossing_points(p)) {
    out << "<circle class=\"crossing\" cx=\"" << X(c.at.x) << "\" cy=\"" << Y(c.at.y)
        << "\" r=\"4.000000\"><title>" << escape(c.a) << " x " << escape(c.b)
        << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::string> role_legend(const ReducedStructure& r) {
  auto set = [](const std::vector<OrbitId>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
    return out + "}";
  };
  std::vector<std::string> lines;
  for (const auto& m : r.maxdomains) {
    const auto& roles = r.roles.at(m.id);
    lines.push_back(m.id + ": Oα=" + set(roles.alpha) + " Oω=" + set(roles.omega) +
                    " Oin=" + set(roles.in) + " Oout=" + set(roles.out));
  }
  return lines;
}

ChordDiagram chord_diagram(const BoundaryOrder& b) {
  if (b.ends.empty()) throw Error("empty boundary order");
  ChordDiagram c{b, {}, interleaving_matrix(b)};
  const double n = static_cast<double>(b.ends.size());
  for (std::size_t k = 0; k < b.ends.size(); ++k) {
    c.angles.push_back(M_PI / 2 + 2 * M_PI * static_cast<double>(k) / n);
  }
  return c;
}

std::string emit_chord_svg(const ChordDiagram& c) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" "
         "height=\"480\" viewBox=\"-1.300000 -1.300000 2.600000 2.600000\">\n";
  out << "<style>.rim{fill:none;stroke:#333;stroke-width:0.01}.chord{stroke-width:0.015}"
         "text{font-family:monospace;font-size:0.07px}</style>\n";
  out << "<circle class=\"rim\" cx=\"0.000000\" cy=\"0.000000\" r=\"1.000000\"/>\n";
  std::map<OrbitId, std::vector<std::size_t>> ends;
  for (std::size_t k = 0; k < c.order.ends.size(); ++k) ends[c.order.ends[k].orbit].push_back(k);
  // svg y grows downwards, so negate sin to keep counterclockwise order
  auto px = [&](std::size_t k) { return num(std::cos(c.angles[k])); };
  auto py = [&](std::size_t k) { return num(-std::sin(c.angles[k])); };
  for (std::size_t i = 0; i < c.order.orbits.size(); ++i) {
    const auto& id = c.order.orbits[i];
    const auto& e = ends.at(id);
    out << "<line class=\"chord\" stroke=\"" << kPalette[i % 10] << "\" x1=\"" << px(e[0])
        << "\" y1=\"" << py(e[0]) << "\" x2=\"" << px(e[1]) << "\" y2=\"" << py(e[1])
        << "\"><title>" << escape(id) << "</title></line>\n";
  }
  for (std::size_t k = 0; k < c.order.ends.size(); ++k) {
    const auto& end = c.order.ends[k];
    double x = 1.12 * std::cos(c.angles[k]), y = -1.12 * std::sin(c.angles[k]);
    out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"middle\">"
        << escape(end.orbit) << (end.kind == EndKind::Backward ? "-" : "+") << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace foliage
