#include "vsg/quandle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace vsg {

using nlohmann::json;

int FiniteVQS::f_pow(int a, int k) const {
  int n = size();
  std::vector<int> finv(n);
  for (int i = 0; i < n; ++i) finv[f[i]] = i;
  int x = a;
  if (k >= 0)
    for (int i = 0; i < k; ++i) x = f[x];
  else
    for (int i = 0; i < -k; ++i) x = finv[x];
  return x;
}

FiniteVQS FiniteVQS::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad VQS JSON: ") + e.what());
  }
  FiniteVQS s;
  try {
    for (auto& e : j.at("elements")) s.elements.push_back(e.get<std::string>());
    for (auto& row : j.at("op")) {
      std::vector<int> r;
      for (auto& x : row) r.push_back(x.get<int>());
      s.op.push_back(r);
    }
    for (auto& x : j.at("bar")) s.bar.push_back(x.get<int>());
    for (auto& x : j.at("f")) s.f.push_back(x.get<int>());
    s.d = j.at("d").get<int>();
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad VQS document: ") + e.what());
  }
  int n = s.size();
  auto in_range = [n](int x) { return x >= 0 && x < n; };
  if (static_cast<int>(s.op.size()) != n || static_cast<int>(s.bar.size()) != n ||
      static_cast<int>(s.f.size()) != n)
    throw StructureError("VQS tables do not match the element count");
  for (auto& row : s.op) {
    if (static_cast<int>(row.size()) != n) throw StructureError("VQS op table is not square");
    for (int x : row)
      if (!in_range(x)) throw StructureError("VQS op entry out of range");
  }
  for (int x : s.bar)
    if (!in_range(x)) throw StructureError("VQS bar entry out of range");
  std::set<int> fs(s.f.begin(), s.f.end());
  for (int x : s.f)
    if (!in_range(x)) throw StructureError("VQS f entry out of range");
  if (static_cast<int>(fs.size()) != n) throw StructureError("VQS f is not invertible");
  if (s.d < 1) throw StructureError("VQS d must be positive");
  return s;
}

std::string FiniteVQS::to_json() const {
  json j;
  j["elements"] = elements;
  j["op"] = op;
  j["bar"] = bar;
  j["f"] = f;
  j["d"] = d;
  return j.dump();
}

FiniteVQS FiniteVQS::trivial() {
  FiniteVQS s;
  s.elements = {"0"};
  s.op = {{0}};
  s.bar = {0};
  s.f = {0};
  s.d = 1;
  return s;
}

FiniteVQS FiniteVQS::dihedral(int n) {
  FiniteVQS s;
  for (int i = 0; i < n; ++i) s.elements.push_back(std::to_string(i));
  s.op.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s.op[a][b] = ((2 * b - a) % n + n) % n;
  s.bar.resize(n);
  s.f.resize(n);
  std::iota(s.bar.begin(), s.bar.end(), 0);
  std::iota(s.f.begin(), s.f.end(), 0);
  s.d = 2;
  return s;
}

int gcd_valence(const VsgCode& code) {
  if (code.vertices.empty()) throw ValidationError("gcd_valence: code has no vertices");
  int g = 0;
  for (auto& v : code.vertices) g = std::gcd(g, code.degree(v));
  return g == 0 ? 1 : g;
}

ValidationReport validate_vqs(const FiniteVQS& s, int d) {
  ValidationReport rep;
  int n = s.size();
  auto fail = [&](const std::string& rule, const std::string& where) {
    rep.ok = false;
    for (auto& v : rep.violations)
      if (v.rule == rule) return;  // first instance per axiom
    rep.violations.push_back({rule, where});
  };
  auto name = [&](int a) { return s.elements[a]; };

  for (int a = 0; a < n; ++a) {
    if (s.op[a][a] != a) fail("idempotence", name(a));
    if (s.bar[s.bar[a]] != a) fail("bar-involution", name(a));
    if (s.op[s.bar[a]][a] != s.bar[a]) fail("bar-absorption", name(a));
    if (s.bar[s.f[a]] != s.f[s.bar[a]]) fail("f-bar-commutation", name(a));
    int fd = s.f_pow(a, d);
    if (fd != a) fail("f-order-divides-d", name(a));
    int finv = s.f_pow(a, -1);
    if (s.bar[finv] != s.f_pow(s.bar[a], -1)) fail("f-inverse-bar-commutation", name(a));
  }
  for (int a = 0; a < n && rep.violations.size() < 32; ++a)
    for (int b = 0; b < n; ++b) {
      if (s.op[s.op[a][b]][s.bar[b]] != a || s.op[s.op[a][s.bar[b]]][b] != a)
        fail("right-invertibility", name(a) + "," + name(b));
      if (s.bar[s.op[a][b]] != s.op[s.bar[a]][b]) fail("bar-distributivity", name(a) + "," + name(b));
      if (s.f[s.op[a][b]] != s.op[s.f[a]][s.f[b]]) fail("f-homomorphism", name(a) + "," + name(b));
      int x = b, y = b;
      for (int k = 0; k < d; ++k) {
        x = s.op[x][a];
        y = s.op[y][s.bar[a]];
      }
      if (x != b || y != b) fail("d-fold-untwisting", name(a) + "," + name(b));
      for (int c = 0; c < n; ++c)
        if (s.op[s.op[a][b]][c] != s.op[s.op[a][c]][s.op[b][c]])
          fail("self-distributivity", name(a) + "," + name(b) + "," + name(c));
    }
  return rep;
}

long long count_colorings_on(const PlanarDiagram& diagram, const FiniteVQS& s, int max_arcs) {
  std::map<std::string, const Gadget*> by_id;
  for (auto& g : diagram.gadgets) by_id[g.id] = &g;

  struct Part {
    Point2 a, b;
    int arc, part;
  };
  std::vector<Part> parts;
  for (size_t ai = 0; ai < diagram.arcs.size(); ++ai)
    for (size_t k = 0; k + 1 < diagram.arcs[ai].polyline.size(); ++k)
      parts.push_back({diagram.arcs[ai].polyline[k], diagram.arcs[ai].polyline[k + 1],
                       static_cast<int>(ai), static_cast<int>(k)});

  struct VirtEvent {
    Rational t;
    int power;
  };
  std::map<std::pair<int, int>, std::vector<VirtEvent>> events;
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j) {
      if (parts[i].arc == parts[j].arc && std::abs(parts[i].part - parts[j].part) <= 1)
        continue;  // consecutive parts share a polyline joint
      Point2 r = parts[i].b - parts[i].a, s2 = parts[j].b - parts[j].a;
      Rational den = cross(r, s2);
      if (den.is_zero()) continue;
      Rational t = cross(parts[j].a - parts[i].a, s2) / den;
      Rational u = cross(parts[j].a - parts[i].a, r) / den;
      Rational zero(0), one(1);
      if (t <= zero || t >= one || u <= zero || u >= one) continue;
      int pi = cross(r, s2).signum();  // +1: other strand crosses left to right
      events[{parts[i].arc, parts[i].part}].push_back({t, pi});
      events[{parts[j].arc, parts[j].part}].push_back({u, -pi});
    }
  for (auto& [key, evs] : events)
    std::sort(evs.begin(), evs.end(),
              [](const VirtEvent& a, const VirtEvent& b) { return a.t < b.t; });

  struct CrossingRef {
    int under_in, under_out;
    int sign;
    std::string label;
  };
  std::vector<CrossingRef> crossings;
  struct VirtualRef {
    int in, out, power;
  };
  std::vector<VirtualRef> virtuals;

  std::map<std::string, std::map<int, const Arc*>> by_edge;
  std::vector<std::string> edge_order;
  std::map<const Arc*, int> arc_index;
  for (size_t t = 0; t < diagram.arcs.size(); ++t) {
    const Arc& a = diagram.arcs[t];
    if (!by_edge.count(a.edge)) edge_order.push_back(a.edge);
    by_edge[a.edge][a.seg] = &a;
    arc_index[&a] = static_cast<int>(t);
  }

  int arcs = 0;
  auto new_arc = [&]() { return arcs++; };
  std::map<std::string, int> over_arc;              // crossing label -> over value arc
  std::map<std::string, int> first_arc, last_arc;   // per edge

  for (auto& eid : edge_order) {
    auto& segs = by_edge[eid];
    int cur = new_arc();
    first_arc[eid] = cur;
    int n = static_cast<int>(segs.size());
    for (int si = 0; si < n; ++si) {
      const Arc* a = segs.at(si);
      for (size_t part = 0; part + 1 < a->polyline.size(); ++part) {
        auto it = events.find({arc_index[a], static_cast<int>(part)});
        if (it == events.end()) continue;
        for (auto& ev : it->second) {
          int nxt = new_arc();
          virtuals.push_back({cur, nxt, ev.power});
          cur = nxt;
        }
      }
      const Gadget* to = by_id.at(a->to.gadget);
      if (to->kind == GadgetKind::Crossing) {
        Role role;
        bool incoming;
        crossing_slot_meaning(to->sign, a->to.slot, role, incoming);
        if (!incoming) throw StructureError("arc enters a crossing at an out-slot");
        if (role == Role::Over) {
          over_arc[to->label] = cur;
        } else {
          int nxt = new_arc();
          crossings.push_back({cur, nxt, to->sign, to->label});
          cur = nxt;
        }
      }
    }
    last_arc[eid] = cur;
  }

  if (arcs > max_arcs) throw BudgetError("count_colorings: too many arcs");

  // assemble constraints
  int q = s.size();
  struct Cons {
    enum Kind { Crossing, Virtual, Equal, Bar } kind;
    int x = -1, y = -1, z = -1;  // crossing: out z = x(in) op via y(over)
    int sign = 1, power = 1;
  };
  std::vector<Cons> cons;
  for (auto& c : crossings) {
    auto it = over_arc.find(c.label);
    if (it == over_arc.end()) throw StructureError("under-passage without an over strand");
    cons.push_back({Cons::Crossing, c.under_in, it->second, c.under_out, c.sign, 0});
  }
  for (auto& v : virtuals) cons.push_back({Cons::Virtual, v.in, -1, v.out, 1, v.power});

  for (auto& g : diagram.gadgets) {
    if (g.kind != GadgetKind::Vertex) continue;
    std::vector<int> entering, leaving;
    for (auto& h : g.rotation) {
      if (h.end == End::Head)
        entering.push_back(last_arc.at(h.edge));
      else
        leaving.push_back(first_arc.at(h.edge));
    }
    for (size_t i = 1; i < entering.size(); ++i)
      cons.push_back({Cons::Equal, entering[0], -1, entering[i], 1, 0});
    for (size_t i = 1; i < leaving.size(); ++i)
      cons.push_back({Cons::Equal, leaving[0], -1, leaving[i], 1, 0});
    if (!entering.empty() && !leaving.empty())
      cons.push_back({Cons::Bar, entering[0], -1, leaving[0], 1, 0});
  }

  // inverse right translation: inv_op[c][b] = a with a op b = c
  std::vector<std::vector<int>> inv_op(q, std::vector<int>(q, -1));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) inv_op[s.op[a][b]][b] = a;
  std::vector<int> finv(q);
  for (int i = 0; i < q; ++i) finv[s.f[i]] = i;

  std::vector<int> val(arcs, -1);
  std::vector<std::vector<int>> touching(arcs);
  for (int i = 0; i < static_cast<int>(cons.size()); ++i) {
    auto& c = cons[i];
    for (int v : {c.x, c.y, c.z})
      if (v >= 0) touching[v].push_back(i);
  }

  // propagate constraint i; returns false on conflict, pushes assignments
  auto apply_cons = [&](int i, std::vector<int>& trail) -> bool {
    auto& c = cons[i];
    auto setv = [&](int var, int v) {
      if (v < 0) return false;
      if (val[var] == v) return true;
      if (val[var] != -1) return false;
      val[var] = v;
      trail.push_back(var);
      return true;
    };
    switch (c.kind) {
      case Cons::Crossing: {
        int in = val[c.x], ov = val[c.y], out = val[c.z];
        if (in >= 0 && ov >= 0) {
          int w = c.sign > 0 ? ov : s.bar[ov];
          return setv(c.z, s.op[in][w]);
        }
        if (out >= 0 && ov >= 0) {
          int w = c.sign > 0 ? ov : s.bar[ov];
          return setv(c.x, inv_op[out][w]);
        }
        return true;  // over unknown: defer
      }
      case Cons::Virtual: {
        int in = val[c.x], out = val[c.z];
        if (in >= 0) return setv(c.z, c.power > 0 ? s.f[in] : finv[in]);
        if (out >= 0) return setv(c.x, c.power > 0 ? finv[out] : s.f[out]);
        return true;
      }
      case Cons::Equal: {
        if (val[c.x] >= 0) return setv(c.z, val[c.x]);
        if (val[c.z] >= 0) return setv(c.x, val[c.z]);
        return true;
      }
      case Cons::Bar: {
        if (val[c.x] >= 0) return setv(c.z, s.bar[val[c.x]]);
        if (val[c.z] >= 0) return setv(c.x, s.bar[val[c.z]]);
        return true;
      }
    }
    return true;
  };

  long long count = 0;
  std::function<void()> solve = [&]() {
    int var = -1;
    for (int i = 0; i < arcs; ++i)
      if (val[i] < 0) {
        var = i;
        break;
      }
    if (var < 0) {
      ++count;
      return;
    }
    for (int v = 0; v < q; ++v) {
      std::vector<int> trail;
      val[var] = v;
      trail.push_back(var);
      // propagate to fixpoint
      bool ok = true;
      size_t head = 0;
      while (ok && head < trail.size()) {
        int changed = trail[head++];
        for (int ci : touching[changed])
          if (!apply_cons(ci, trail)) {
            ok = false;
            break;
          }
      }
      if (ok) solve();
      for (int t2 : trail) val[t2] = -1;
    }
  };
  solve();
  return count;
}

long long count_colorings(const VsgCode& code, const FiniteVQS& s, const ColoringOptions& opts) {
  require_valid(code);
  ValidationReport rep = validate_vqs(s, gcd_valence(code));
  if (!rep.ok) {
    std::string msg = "structure fails the axioms for this code's d:";
    for (auto& v : rep.violations) msg += " [" + v.rule + " @ " + v.where + "]";
    throw ValidationError(msg);
  }
  PlanarDiagram d = realize(code, opts.variant);
  return count_colorings_on(d, s, opts.max_arcs);
}

}  // namespace vsg
