#include "vsg/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

namespace vsg {

using nlohmann::json;

const Gadget& PlanarDiagram::gadget(const std::string& id) const {
  for (auto& g : gadgets)
    if (g.id == id) return g;
  throw StructureError("unknown gadget: " + id);
}

int crossing_slot(int sign, Role role, bool incoming) {
  if (role == Role::Over) return incoming ? 0 : 2;
  if (sign > 0) return incoming ? 1 : 3;
  return incoming ? 3 : 1;
}

void crossing_slot_meaning(int sign, int slot, Role& role, bool& incoming) {
  for (Role r : {Role::Over, Role::Under})
    for (bool in : {true, false})
      if (crossing_slot(sign, r, in) == slot) {
        role = r;
        incoming = in;
        return;
      }
  throw StructureError("bad crossing slot");
}

namespace {

// Rational point on the unit circle: u in [0,4) sweeps one full CCW turn,
// a quarter per unit, via the tangent-half-angle parametrization.
Point2 unit_dir(Rational u) {
  Rational one(1);
  int quad = 0;
  while (u >= one) {
    u = u - one;
    ++quad;
  }
  Rational t2 = u * u;
  Point2 p{(one - t2) / (one + t2), (u + u) / (one + t2)};
  for (int i = 0; i < (quad & 3); ++i) p = Point2{Rational(0) - p.y, p.x};
  return p;
}

Rational pow2_inv(int k) {
  BigInt d(1);
  for (int i = 0; i < k; ++i) d = d * BigInt(2);
  return Rational(BigInt(1), d);
}

struct Seg {
  Point2 a, b;
  int arc;
  int part;
};

int sgn(const Rational& r) { return r.signum(); }

bool on_segment(const Point2& p, const Point2& q, const Point2& x) {
  if (sgn(cross(q - p, x - p)) != 0) return false;
  return std::min(p.x, q.x) <= x.x && x.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= x.y && x.y <= std::max(p.y, q.y);
}

enum class Hit { None, Proper, EndTouch, Degenerate };

bool shares_endpoint(const Seg& s, const Seg& t, Point2& at) {
  for (auto& p : {s.a, s.b})
    for (auto& q : {t.a, t.b})
      if (p == q) {
        at = p;
        return true;
      }
  return false;
}

Hit intersect(const Seg& s, const Seg& t, Point2& out) {
  Point2 r = s.b - s.a, d = t.b - t.a;
  Rational denom = cross(r, d);
  Rational c1 = cross(d, s.a - t.a);
  Rational c2 = cross(d, s.b - t.a);
  Rational c3 = cross(r, t.a - s.a);
  Rational c4 = cross(r, t.b - s.a);
  Point2 shared;
  bool touch = shares_endpoint(s, t, shared);
  if (denom.is_zero()) {
    if (!c1.is_zero()) return Hit::None;
    // collinear: overlap beyond a single shared endpoint is degenerate
    int inside = 0;
    for (auto& p : {t.a, t.b})
      if (on_segment(s.a, s.b, p) && !(p == s.a) && !(p == s.b)) ++inside;
    for (auto& p : {s.a, s.b})
      if (on_segment(t.a, t.b, p) && !(p == t.a) && !(p == t.b)) ++inside;
    if (inside > 0) return Hit::Degenerate;
    return touch ? Hit::EndTouch : Hit::None;
  }
  int a1 = sgn(c1), a2 = sgn(c2), a3 = sgn(c3), a4 = sgn(c4);
  if (a1 == 0 || a2 == 0 || a3 == 0 || a4 == 0) {
    if (touch) {
      // a shared endpoint explains exactly one zero per segment pair; an
      // endpoint lying inside the other segment does not
      if ((a1 == 0 && !(s.a == shared) && on_segment(t.a, t.b, s.a)) ||
          (a2 == 0 && !(s.b == shared) && on_segment(t.a, t.b, s.b)) ||
          (a3 == 0 && !(t.a == shared) && on_segment(s.a, s.b, t.a)) ||
          (a4 == 0 && !(t.b == shared) && on_segment(s.a, s.b, t.b)))
        return Hit::Degenerate;
      return Hit::EndTouch;
    }
    if ((a1 == 0 && on_segment(t.a, t.b, s.a)) || (a2 == 0 && on_segment(t.a, t.b, s.b)) ||
        (a3 == 0 && on_segment(s.a, s.b, t.a)) || (a4 == 0 && on_segment(s.a, s.b, t.b)))
      return Hit::Degenerate;
    return Hit::None;
  }
  if (a1 != a2 && a3 != a4) {
    Rational u = c3 / denom;
    out = Point2{s.a.x + r.x * u, s.a.y + r.y * u};
    return Hit::Proper;
  }
  return Hit::None;
}

// CCW angular order anchored at the positive x-axis.
bool angle_less(const Point2& a, const Point2& b) {
  auto half = [](const Point2& v) {
    return (sgn(v.y) < 0 || (sgn(v.y) == 0 && sgn(v.x) < 0)) ? 1 : 0;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return sgn(cross(a, b)) > 0;
}

struct Build {
  const VsgCode& code;
  unsigned variant;
  std::vector<std::string> gadget_order;
  std::map<std::string, int> crossing_sign;
  std::map<std::string, Point2> centers;
  std::map<std::string, std::vector<Point2>> port_pos;

  Build(const VsgCode& c, unsigned v) : code(c), variant(v) {
    for (auto& vtx : code.vertices) gadget_order.push_back(vtx);
    for (auto& e : code.edges) {
      auto it = code.passages.find(e.id);
      if (it == code.passages.end()) continue;
      for (auto& p : it->second)
        if (!crossing_sign.count(p.crossing)) {
          crossing_sign[p.crossing] = p.sign;
          gadget_order.push_back(p.crossing);
        }
    }
  }

  bool is_vertex(const std::string& id) const {
    return std::find(code.vertices.begin(), code.vertices.end(), id) != code.vertices.end();
  }

  void place() {
    size_t m = gadget_order.size();
    if (m == 0) return;
    Rational radius(100);
    for (size_t k = 0; k < m; ++k) {
      size_t idx = (k + variant) % m;
      Rational u(BigInt(4 * static_cast<long long>(idx)), BigInt(static_cast<long long>(m)));
      centers[gadget_order[k]] = unit_dir(u).scaled(radius);
    }
    Rational r(25);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        Point2 d = centers[gadget_order[i]] - centers[gadget_order[j]];
        Rational d2 = dot(d, d);
        while (r * r * Rational(16) > d2) r = r * Rational(BigInt(1), BigInt(2));
      }
    for (auto& id : gadget_order) {
      int deg = is_vertex(id) ? code.degree(id) : 4;
      auto& ports = port_pos[id];
      for (int s = 0; s < deg; ++s) {
        Rational u(BigInt(4 * s), BigInt(deg));
        ports.push_back(centers[id] + unit_dir(u).scaled(r));
      }
    }
  }

  int vertex_slot(const std::string& v, const HalfEdge& h) const {
    auto& rot = code.rotations.at(v);
    for (size_t i = 0; i < rot.size(); ++i)
      if (rot[i] == h) return static_cast<int>(i);
    throw StructureError("half-edge not in rotation of " + v);
  }
};

const Point2 kJitterDirs[8] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}, {1, 2}, {2, 1}, {-1, 2}, {-2, 1}};

}  // namespace

PlanarDiagram realize(const VsgCode& code, unsigned variant) {
  require_valid(code);
  Build b(code, variant);
  b.place();

  struct Route {
    std::string edge;
    std::vector<Port> pts;  // even count: from/to pairs in order
  };
  std::vector<Route> routes;
  for (auto& e : code.edges) {
    Route r;
    r.edge = e.id;
    r.pts.push_back({e.tail, b.vertex_slot(e.tail, {e.id, End::Tail})});
    auto it = code.passages.find(e.id);
    if (it != code.passages.end())
      for (auto& p : it->second) {
        int sg = b.crossing_sign.at(p.crossing);
        r.pts.push_back({p.crossing, crossing_slot(sg, p.role, true)});
        r.pts.push_back({p.crossing, crossing_slot(sg, p.role, false)});
      }
    r.pts.push_back({e.head, b.vertex_slot(e.head, {e.id, End::Head})});
    routes.push_back(std::move(r));
  }

  auto port_point = [&](const Port& p) { return b.port_pos.at(p.gadget)[p.slot]; };
  Rational half(BigInt(1), BigInt(2));

  for (int round = 0; round < 64; ++round) {
    int eff = round + (variant > 0 ? 1 + static_cast<int>(variant % 5) : 0);
    std::vector<Arc> arcs;
    for (auto& r : routes) {
      int seg = 0;
      for (size_t i = 0; i + 1 < r.pts.size(); i += 2, ++seg) {
        Arc a;
        a.edge = r.edge;
        a.seg = seg;
        a.from = r.pts[i];
        a.to = r.pts[i + 1];
        Point2 P = port_point(a.from), Q = port_point(a.to);
        int arc_index = static_cast<int>(arcs.size());
        bool bend = false;
        Point2 mid{(P.x + Q.x) * half, (P.y + Q.y) * half};
        if (a.from.gadget == a.to.gadget) {
          Point2 c = b.centers.at(a.from.gadget);
          Point2 off = mid - c;
          if (off.x.is_zero() && off.y.is_zero()) {
            Point2 d = Q - P;
            off = Point2{Rational(0) - d.y, d.x};
          }
          mid = mid + off + off;  // bulge the loop chord away from the gadget
          bend = true;
        }
        if (eff > 0) {
          Rational eps = pow2_inv(6 + 2 * std::min(eff, 20));
          mid = mid + kJitterDirs[(arc_index + eff) % 8].scaled(eps * Rational(arc_index + 1 + eff));
          bend = true;
        }
        Point2 Cf = b.centers.at(a.from.gadget), Ct = b.centers.at(a.to.gadget);
        if (bend)
          a.polyline = {Cf, P, mid, Q, Ct};
        else
          a.polyline = {Cf, P, Q, Ct};
        arcs.push_back(std::move(a));
      }
    }

    std::vector<Seg> segs;
    for (size_t ai = 0; ai < arcs.size(); ++ai)
      for (size_t k = 0; k + 1 < arcs[ai].polyline.size(); ++k)
        segs.push_back({arcs[ai].polyline[k], arcs[ai].polyline[k + 1], static_cast<int>(ai),
                        static_cast<int>(k)});

    std::set<Point2> center_points;
    for (auto& [id, c] : b.centers) center_points.insert(c);
    bool degenerate = false;
    std::map<Point2, std::vector<std::pair<int, int>>> hits;
    for (size_t i = 0; i < segs.size() && !degenerate; ++i)
      for (size_t j = i + 1; j < segs.size() && !degenerate; ++j) {
        if (segs[i].arc == segs[j].arc && std::abs(segs[i].part - segs[j].part) <= 1)
          continue;  // consecutive parts of one arc share a polyline point
        Point2 x;
        Hit h = intersect(segs[i], segs[j], x);
        if (h == Hit::Degenerate) degenerate = true;
        if (h == Hit::EndTouch) {
          // legal only where arcs meet their common gadget center
          Point2 at;
          shares_endpoint(segs[i], segs[j], at);
          if (!center_points.count(at)) degenerate = true;
        }
        if (h == Hit::Proper) hits[x].push_back({static_cast<int>(i), static_cast<int>(j)});
      }
    if (!degenerate)
      for (auto& [pt, prs] : hits)
        if (prs.size() > 1) degenerate = true;  // coincident intersections
    if (!degenerate) {
      std::vector<Point2> avoid;
      for (auto& [id, c] : b.centers) avoid.push_back(c);
      for (auto& [id, ports] : b.port_pos)
        for (auto& p : ports) avoid.push_back(p);
      for (auto& s : segs) {
        for (auto& pt : avoid)
          if (!(pt == s.a) && !(pt == s.b) && on_segment(s.a, s.b, pt)) {
            degenerate = true;
            break;
          }
        if (degenerate) break;
      }
    }
    if (degenerate) continue;

    PlanarDiagram d;
    for (auto& id : b.gadget_order) {
      Gadget g;
      g.id = id;
      g.pos = b.centers.at(id);
      if (b.is_vertex(id)) {
        g.kind = GadgetKind::Vertex;
        g.rotation = code.rotations.at(id);
      } else {
        g.kind = GadgetKind::Crossing;
        g.label = id;
        g.sign = b.crossing_sign.at(id);
      }
      d.gadgets.push_back(std::move(g));
    }
    d.arcs = arcs;
    std::set<std::string> used;
    for (auto& g : d.gadgets) used.insert(g.id);
    int vid = 1;
    for (auto& [pt, prs] : hits) {
      const Seg& s = segs[prs[0].first];
      const Seg& t = segs[prs[0].second];
      Gadget g;
      do {
        g.id = "x" + std::to_string(vid++);
      } while (used.count(g.id));
      used.insert(g.id);
      g.kind = GadgetKind::Virtual;
      g.pos = pt;
      std::vector<std::pair<Point2, VirtualEnd>> germs = {
          {s.a - pt, {s.arc, true}},
          {s.b - pt, {s.arc, false}},
          {t.a - pt, {t.arc, true}},
          {t.b - pt, {t.arc, false}},
      };
      std::sort(germs.begin(), germs.end(),
                [](const auto& x, const auto& y) { return angle_less(x.first, y.first); });
      for (auto& [dir, end] : germs) g.ends.push_back(end);
      d.gadgets.push_back(std::move(g));
    }
    return d;
  }
  throw StructureError("realize: perturbation failed to resolve degeneracies");
}

VsgCode extract_code(const PlanarDiagram& d) {
  VsgCode c;
  std::map<std::string, const Gadget*> by_id;
  for (auto& g : d.gadgets) {
    if (!by_id.emplace(g.id, &g).second) throw StructureError("duplicate gadget id " + g.id);
    if (g.kind == GadgetKind::Vertex) {
      c.vertices.push_back(g.id);
      c.rotations[g.id] = g.rotation;
    }
  }

  std::vector<std::string> edge_order;
  std::map<std::string, std::map<int, const Arc*>> by_edge;
  for (auto& a : d.arcs) {
    if (!by_edge.count(a.edge)) edge_order.push_back(a.edge);
    if (!by_edge[a.edge].emplace(a.seg, &a).second)
      throw StructureError("duplicate segment for edge " + a.edge);
  }

  auto gad = [&](const Port& p) -> const Gadget& {
    auto it = by_id.find(p.gadget);
    if (it == by_id.end()) throw StructureError("dangling port " + p.gadget);
    return *it->second;
  };

  for (auto& eid : edge_order) {
    auto& segmap = by_edge[eid];
    int n = static_cast<int>(segmap.size());
    for (int i = 0; i < n; ++i)
      if (!segmap.count(i)) throw StructureError("missing segment " + std::to_string(i) + " of " + eid);

    const Gadget& tailg = gad(segmap[0]->from);
    const Gadget& headg = gad(segmap[n - 1]->to);
    if (tailg.kind != GadgetKind::Vertex || headg.kind != GadgetKind::Vertex)
      throw StructureError("edge " + eid + " does not start and end at vertices");
    c.edges.push_back({eid, tailg.id, headg.id});

    std::vector<Passage> seq;
    for (int i = 0; i + 1 < n; ++i) {
      const Gadget& to_g = gad(segmap[i]->to);
      if (to_g.kind != GadgetKind::Crossing)
        throw StructureError("interior stop of edge " + eid + " is not a crossing");
      Role role;
      bool incoming;
      crossing_slot_meaning(to_g.sign, segmap[i]->to.slot, role, incoming);
      if (!incoming) throw StructureError("edge " + eid + " enters crossing " + to_g.id + " at an out-slot");
      const Arc* nxt = segmap[i + 1];
      Role role2;
      bool in2;
      if (nxt->from.gadget != to_g.id)
        throw StructureError("edge " + eid + " does not continue through crossing " + to_g.id);
      crossing_slot_meaning(to_g.sign, nxt->from.slot, role2, in2);
      if (in2 || role2 != role)
        throw StructureError("edge " + eid + " leaves crossing " + to_g.id + " on the wrong slot");
      seq.push_back({to_g.label, role, to_g.sign});
    }
    c.passages[eid] = seq;
  }

  ValidationReport rep = validate(c);
  if (!rep.ok) throw StructureError("extracted code is invalid (unpaired strand?)");
  return c;
}

namespace {

json point_json(const Point2& p) { return json::array({p.x.to_string(), p.y.to_string()}); }

Point2 point_from(const json& j) {
  return {Rational::parse(j.at(0).get<std::string>()), Rational::parse(j.at(1).get<std::string>())};
}

std::string num(double v) {
  char buf[40];
  snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string serialize_diagram(const PlanarDiagram& d) {
  json j;
  j["version"] = 1;
  j["gadgets"] = json::array();
  for (auto& g : d.gadgets) {
    json e;
    e["id"] = g.id;
    e["pos"] = point_json(g.pos);
    switch (g.kind) {
      case GadgetKind::Vertex: {
        e["kind"] = "vertex";
        json rot = json::array();
        for (auto& h : g.rotation)
          rot.push_back(json::array({h.edge, h.end == End::Tail ? "tail" : "head"}));
        e["rotation"] = rot;
        break;
      }
      case GadgetKind::Crossing:
        e["kind"] = "crossing";
        e["label"] = g.label;
        e["sign"] = g.sign > 0 ? "+" : "-";
        break;
      case GadgetKind::Virtual: {
        e["kind"] = "virtual";
        json ends = json::array();
        for (auto& en : g.ends) ends.push_back({{"arc", en.arc}, {"dir", en.in ? "in" : "out"}});
        e["ends"] = ends;
        break;
      }
    }
    j["gadgets"].push_back(e);
  }
  j["arcs"] = json::array();
  for (auto& a : d.arcs) {
    json e;
    e["edge"] = a.edge;
    e["seg"] = a.seg;
    json poly = json::array();
    for (auto& p : a.polyline) poly.push_back(point_json(p));
    e["polyline"] = poly;
    e["from"] = json::array({a.from.gadget, a.from.slot});
    e["to"] = json::array({a.to.gadget, a.to.slot});
    j["arcs"].push_back(e);
  }
  return j.dump();
}

PlanarDiagram parse_diagram(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad JSON: ") + e.what());
  }
  try {
    if (j.value("version", 0) != 1) throw StructureError("unsupported diagram version");
    PlanarDiagram d;
    for (auto& e : j.at("gadgets")) {
      Gadget g;
      g.id = e.at("id").get<std::string>();
      g.pos = point_from(e.at("pos"));
      std::string kind = e.at("kind").get<std::string>();
      if (kind == "vertex") {
        g.kind = GadgetKind::Vertex;
        for (auto& h : e.at("rotation"))
          g.rotation.push_back({h.at(0).get<std::string>(),
                                h.at(1).get<std::string>() == "tail" ? End::Tail : End::Head});
      } else if (kind == "crossing") {
        g.kind = GadgetKind::Crossing;
        g.label = e.at("label").get<std::string>();
        g.sign = e.at("sign").get<std::string>() == "+" ? 1 : -1;
      } else if (kind == "virtual") {
        g.kind = GadgetKind::Virtual;
        if (e.contains("ends"))
          for (auto& en : e.at("ends"))
            g.ends.push_back({en.at("arc").get<int>(), en.at("dir").get<std::string>() == "in"});
      } else {
        throw StructureError("unknown gadget kind " + kind);
      }
      d.gadgets.push_back(std::move(g));
    }
    for (auto& e : j.at("arcs")) {
      Arc a;
      a.edge = e.at("edge").get<std::string>();
      a.seg = e.at("seg").get<int>();
      for (auto& p : e.at("polyline")) a.polyline.push_back(point_from(p));
      a.from = {e.at("from").at(0).get<std::string>(), e.at("from").at(1).get<int>()};
      a.to = {e.at("to").at(0).get<std::string>(), e.at("to").at(1).get<int>()};
      d.arcs.push_back(std::move(a));
    }
    return d;
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad diagram document: ") + e.what());
  }
}

std::string render_svg(const PlanarDiagram& d) {
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  bool any = false;
  auto grow = [&](const Point2& p) {
    double x = p.x.to_double(), y = p.y.to_double();
    if (!any) {
      minx = maxx = x;
      miny = maxy = y;
      any = true;
    } else {
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  };
  for (auto& g : d.gadgets) grow(g.pos);
  for (auto& a : d.arcs)
    for (auto& p : a.polyline) grow(p);

  double pad = 12;
  double w = maxx - minx + 2 * pad, h = maxy - miny + 2 * pad;
  auto X = [&](const Point2& p) { return p.x.to_double() - minx + pad; };
  auto Y = [&](const Point2& p) { return maxy - p.y.to_double() + pad; };  // y up

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w * 4) +
       "\" height=\"" + num(h * 4) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";

  for (auto& a : d.arcs) {
    std::string path = "M " + num(X(a.polyline[0])) + " " + num(Y(a.polyline[0]));
    for (size_t i = 1; i < a.polyline.size(); ++i)
      path += " L " + num(X(a.polyline[i])) + " " + num(Y(a.polyline[i]));
    s += "<path class=\"arc\" d=\"" + path +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.4\"/>\n";
  }

  auto line = [&](const Point2& a, const Point2& b, const std::string& cls) {
    return "<line class=\"" + cls + "\" x1=\"" + num(X(a)) + "\" y1=\"" + num(Y(a)) + "\" x2=\"" +
           num(X(b)) + "\" y2=\"" + num(Y(b)) + "\" stroke=\"black\" stroke-width=\"0.4\"/>\n";
  };

  for (auto& g : d.gadgets) {
    switch (g.kind) {
      case GadgetKind::Vertex:
        s += "<circle class=\"vertex-dot\" cx=\"" + num(X(g.pos)) + "\" cy=\"" + num(Y(g.pos)) +
             "\" r=\"1.2\" fill=\"black\"/>\n";
        break;
      case GadgetKind::Crossing: {
        // the arcs run through the center; mask the under strand near it and
        // redraw the over strand on top
        std::vector<Point2> port(4, g.pos);
        for (auto& a : d.arcs) {
          if (a.from.gadget == g.id && a.from.slot < 4 && a.polyline.size() >= 2)
            port[a.from.slot] = a.polyline[1];
          if (a.to.gadget == g.id && a.to.slot < 4 && a.polyline.size() >= 2)
            port[a.to.slot] = a.polyline[a.polyline.size() - 2];
        }
        int oi = crossing_slot(g.sign, Role::Over, true);
        int oo = crossing_slot(g.sign, Role::Over, false);
        int ui = crossing_slot(g.sign, Role::Under, true);
        int uo = crossing_slot(g.sign, Role::Under, false);
        auto toward = [&](const Point2& from, double f) {
          double gx = X(g.pos), gy = Y(g.pos), px = X(from), py = Y(from);
          return std::pair<double, double>{px + (gx - px) * f, py + (gy - py) * f};
        };
        s += "<g class=\"under-gap\">";
        for (int slot : {ui, uo}) {
          auto [mx, my] = toward(port[slot], 0.55);
          s += "<line x1=\"" + num(mx) + "\" y1=\"" + num(my) + "\" x2=\"" + num(X(g.pos)) +
               "\" y2=\"" + num(Y(g.pos)) + "\" stroke=\"white\" stroke-width=\"1.2\"/>";
        }
        s += "</g>\n";
        s += line(port[oi], g.pos, "over-strand");
        s += line(g.pos, port[oo], "over-strand");
        break;
      }
      case GadgetKind::Virtual:
        s += "<circle class=\"virtual-marker\" cx=\"" + num(X(g.pos)) + "\" cy=\"" +
             num(Y(g.pos)) + "\" r=\"1.5\" fill=\"none\" stroke=\"black\" stroke-width=\"0.35\"/>\n";
        break;
    }
  }

  std::map<std::string, const Arc*> last;
  for (auto& a : d.arcs) {
    auto it = last.find(a.edge);
    if (it == last.end() || it->second->seg < a.seg) last[a.edge] = &a;
  }
  for (auto& [eid, a] : last) {
    const Point2& tip = a->polyline.back();
    const Point2& prev = a->polyline[a->polyline.size() - 2];
    double tx = X(tip), ty = Y(tip), px = X(prev), py = Y(prev);
    double dx = tx - px, dy = ty - py;
    double len = std::max(1e-9, std::sqrt(dx * dx + dy * dy));
    dx /= len;
    dy /= len;
    double bx = tx - dx * 2.4, by = ty - dy * 2.4, nx = -dy, ny = dx;
    s += "<polygon class=\"arrowhead\" points=\"" + num(tx) + "," + num(ty) + " " +
         num(bx + nx) + "," + num(by + ny) + " " + num(bx - nx) + "," + num(by - ny) +
         "\" fill=\"black\"/>\n";
  }

  s += "</svg>\n";
  return s;
}

}  // namespace vsg
