#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "foliage/decompose.hpp"
#include "foliage/rational.hpp"
#include "foliage/realize.hpp"

namespace foliage {

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

struct SlotGeometry {
  std::vector<Rational> ys;  // one per strand for a Link, one otherwise
};

struct Box {
  std::string id;
  Rational x0, y0, x1, y1;  // y0 bottom, y1 top
  std::vector<SlotGeometry> west, east;  // parallel to the embedding's slots
  std::map<OrbitId, Rational> west_port, east_port;
};

struct Corridor {
  std::size_t edge;
  LeafId leaf;
  Rational x0, y0, x1, y1;
};

struct Layout {
  Embedding embedding;
  std::vector<Box> boxes;  // parallel to embedding.nodes
  std::vector<Corridor> corridors;  // parallel to embedding.edges
  std::vector<std::vector<std::size_t>> components;  // node indices, root first
  Rational min_x, min_y, max_x, max_y;  // bounds of boxes and corridors
};

// Recursive tree layout: forward is +x, port index 0 is topmost, ports are
// nudged by distinct per-orbit offsets.
Layout layout(const Embedding& e);
Layout layout(const ValidatedScenario& s, const ReducedStructure& r,
              const std::map<std::string, PortPlan>& plans);

struct Polyline {
  OrbitId orbit;
  std::vector<Point> points;
  std::size_t first_port;  // index of the entry port of the first box
  std::size_t last_port;   // index of the exit port of the last box
};

struct PolylineSet {
  std::vector<Polyline> lines;  // embedding orbit order
  std::vector<std::pair<std::string, std::vector<Point>>> boxes;  // id, 4 corners
  Rational frame_x0, frame_y0, frame_x1, frame_y1;
  BoundaryOrder ends;  // read off the frame, left to right
};

// Straight segments inside boxes, parallel strands in corridors, and stubs
// that follow offsets of the outline of boxes and corridors down to the
// bottom of the frame.
PolylineSet route(const Layout& l);

struct CrossingPoint {
  OrbitId a, b;
  Point at;
  std::string box;  // box containing the point, empty if none
};

// Proper crossings between the polylines of different orbits, using exact
// orientation tests. Throws DegeneracyError on touching or overlapping
// segments.
std::vector<CrossingPoint> crossing_points(const PolylineSet& p);
CrossingMatrix exact_crossings(const PolylineSet& p);

// True when no two non-adjacent segments of the polyline meet and adjacent
// ones share only their common vertex.
bool is_simple(const std::vector<Point>& line);
bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d);

struct SvgOptions {
  double scale = 12.0;
  std::string title;
  std::vector<std::string> legend;
};

std::string emit_svg(const Layout& l, const PolylineSet& p, const SvgOptions& options = {});

// Legend lines with the role sets of every MaxDomain.
std::vector<std::string> role_legend(const ReducedStructure& r);

struct ChordDiagram {
  BoundaryOrder order;
  std::vector<double> angles;  // per end, radians; rendering only
  CrossingMatrix interleaving;
};

ChordDiagram chord_diagram(const BoundaryOrder& b);
std::string emit_chord_svg(const ChordDiagram& c);

}  // namespace foliage
