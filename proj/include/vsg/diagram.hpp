#pragma once

#include <string>
#include <vector>

#include "vsg/code.hpp"
#include "vsg/rational.hpp"

namespace vsg {

enum class GadgetKind { Vertex, Crossing, Virtual };

struct Port {
  std::string gadget;
  int slot = 0;
  bool operator==(const Port& o) const = default;
};

// A strand germ at a virtual crossing: the arc and whether the germ lies on
// the incoming side of that arc.
struct VirtualEnd {
  int arc = 0;
  bool in = false;
  bool operator==(const VirtualEnd& o) const = default;
};

struct Gadget {
  std::string id;
  GadgetKind kind = GadgetKind::Vertex;
  Point2 pos;
  std::vector<HalfEdge> rotation;  // vertex gadgets: CCW port order
  std::string label;               // crossing gadgets
  int sign = 1;
  std::vector<VirtualEnd> ends;  // virtual gadgets: CCW order of the 4 germs
};

struct Arc {
  std::string edge;
  int seg = 0;
  // center of the from-gadget, its port, optional bend, port and center of
  // the to-gadget; every strand physically reaches the gadget points, so a
  // stray strand cannot sneak between a gadget and its legs undetected
  std::vector<Point2> polyline;
  Port from, to;
};

struct PlanarDiagram {
  std::vector<Gadget> gadgets;
  std::vector<Arc> arcs;
  const Gadget& gadget(const std::string& id) const;
};

// Crossing gadget slot conventions, CCW: sign + is (over-in, under-in,
// over-out, under-out); sign - is (over-in, under-out, over-out, under-in).
int crossing_slot(int sign, Role role, bool incoming);
void crossing_slot_meaning(int sign, int slot, Role& role, bool& incoming);

// Realizes any valid code in the plane. `variant` selects between deterministic
// routings of the same code (used to exercise realization-independence);
// all variants satisfy the same contract.
PlanarDiagram realize(const VsgCode& code, unsigned variant = 0);

VsgCode extract_code(const PlanarDiagram& diagram);

std::string render_svg(const PlanarDiagram& diagram);

std::string serialize_diagram(const PlanarDiagram& diagram);
PlanarDiagram parse_diagram(const std::string& json_text);

}  // namespace vsg
