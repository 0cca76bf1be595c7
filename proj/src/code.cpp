#include "vsg/code.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace vsg {

using nlohmann::json;

const EdgeRec& VsgCode::edge(const std::string& id) const {
  for (auto& e : edges)
    if (e.id == id) return e;
  throw StructureError("unknown edge: " + id);
}

int VsgCode::crossing_count() const {
  std::set<std::string> labels;
  for (auto& [e, seq] : passages)
    for (auto& p : seq) labels.insert(p.crossing);
  return static_cast<int>(labels.size());
}

int VsgCode::degree(const std::string& vertex) const {
  auto it = rotations.find(vertex);
  return it == rotations.end() ? 0 : static_cast<int>(it->second.size());
}

namespace {

bool cyclic_equal(const std::vector<HalfEdge>& a, const std::vector<HalfEdge>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) ok = a[(s + i) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

std::vector<HalfEdge> least_rotation(const std::vector<HalfEdge>& v) {
  if (v.empty()) return v;
  size_t best = 0;
  auto less_from = [&](size_t s, size_t t) {
    for (size_t i = 0; i < v.size(); ++i) {
      const HalfEdge& x = v[(s + i) % v.size()];
      const HalfEdge& y = v[(t + i) % v.size()];
      if (x == y) continue;
      return x < y;
    }
    return false;
  };
  for (size_t s = 1; s < v.size(); ++s)
    if (less_from(s, best)) best = s;
  std::vector<HalfEdge> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) out.push_back(v[(best + i) % v.size()]);
  return out;
}

}  // namespace

bool operator==(const VsgCode& a, const VsgCode& b) {
  if (a.vertices != b.vertices || a.edges != b.edges || a.passages != b.passages) return false;
  if (a.rotations.size() != b.rotations.size()) return false;
  for (auto& [v, rot] : a.rotations) {
    auto it = b.rotations.find(v);
    if (it == b.rotations.end() || !cyclic_equal(rot, it->second)) return false;
  }
  return true;
}

ValidationReport validate(const VsgCode& code) {
  ValidationReport rep;
  auto fail = [&](const std::string& rule, const std::string& where) {
    rep.ok = false;
    rep.violations.push_back({rule, where});
  };

  std::set<std::string> vset, eset;
  for (auto& v : code.vertices)
    if (!vset.insert(v).second) fail("duplicate-id", "vertex " + v);
  for (auto& e : code.edges) {
    if (!eset.insert(e.id).second) fail("duplicate-id", "edge " + e.id);
    if (!vset.count(e.tail)) fail("edge-endpoint", "edge " + e.id + " tail " + e.tail);
    if (!vset.count(e.head)) fail("edge-endpoint", "edge " + e.id + " head " + e.head);
  }

  for (auto& [v, rot] : code.rotations)
    if (!vset.count(v)) fail("rotation-unknown-vertex", "vertex " + v);
  for (auto& [e, seq] : code.passages)
    if (!eset.count(e)) fail("passage-unknown-edge", "edge " + e);

  // every incident half-edge appears exactly once in its vertex's rotation
  std::map<std::string, std::multiset<std::pair<std::string, int>>> expected;
  for (auto& v : code.vertices) expected[v];
  for (auto& e : code.edges) {
    if (vset.count(e.tail)) expected[e.tail].insert({e.id, 0});
    if (vset.count(e.head)) expected[e.head].insert({e.id, 1});
  }
  for (auto& [v, want] : expected) {
    std::multiset<std::pair<std::string, int>> got;
    auto it = code.rotations.find(v);
    if (it != code.rotations.end())
      for (auto& h : it->second) got.insert({h.edge, h.end == End::Tail ? 0 : 1});
    for (auto& h : want)
      if (got.count(h) < want.count(h)) {
        fail("rotation-incomplete", "vertex " + v + " missing " + h.first);
        break;
      }
    for (auto& h : got)
      if (want.count(h) < got.count(h)) {
        fail("rotation-extra", "vertex " + v + " extra " + h.first);
        break;
      }
  }

  // crossing pairing: each label twice, same sign, opposite roles
  std::map<std::string, std::vector<Passage>> occ;
  for (auto& e : code.edges) {
    auto it = code.passages.find(e.id);
    if (it == code.passages.end()) continue;
    for (auto& p : it->second) occ[p.crossing].push_back(p);
  }
  for (auto& [label, ps] : occ) {
    if (ps.size() != 2) {
      fail("unpaired-crossing", "crossing " + label);
      continue;
    }
    if (ps[0].sign != ps[1].sign) fail("sign-mismatch", "crossing " + label);
    if (ps[0].role == ps[1].role) fail("role-mismatch", "crossing " + label);
  }

  return rep;
}

void require_valid(const VsgCode& code) {
  ValidationReport rep = validate(code);
  if (!rep.ok) {
    std::string msg = "invalid code:";
    for (auto& v : rep.violations) msg += " [" + v.rule + " @ " + v.where + "]";
    throw ValidationError(msg);
  }
}

std::string canonical_serialize(const VsgCode& code) {
  json j;
  j["version"] = 1;
  j["vertices"] = code.vertices;
  j["edges"] = json::array();
  for (auto& e : code.edges) j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  json rot = json::object();
  for (auto& v : code.vertices) {
    json arr = json::array();
    auto it = code.rotations.find(v);
    if (it != code.rotations.end())
      for (auto& h : it->second) arr.push_back(json::array({h.edge, h.end == End::Tail ? "tail" : "head"}));
    rot[v] = arr;
  }
  j["rotations"] = rot;
  json pas = json::object();
  for (auto& e : code.edges) {
    json arr = json::array();
    auto it = code.passages.find(e.id);
    if (it != code.passages.end())
      for (auto& p : it->second)
        arr.push_back({{"x", p.crossing},
                       {"role", p.role == Role::Over ? "o" : "u"},
                       {"sign", p.sign > 0 ? "+" : "-"}});
    pas[e.id] = arr;
  }
  j["passages"] = pas;
  return j.dump();
}

VsgCode parse_code(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw StructureError("code document must be an object");
    if (j.value("version", 0) != 1) throw StructureError("unsupported code version");
    VsgCode c;
    for (auto& v : j.at("vertices")) c.vertices.push_back(v.get<std::string>());
    for (auto& e : j.at("edges"))
      c.edges.push_back({e.at("id").get<std::string>(), e.at("tail").get<std::string>(),
                         e.at("head").get<std::string>()});
    if (j.contains("rotations"))
      for (auto& [v, arr] : j.at("rotations").items()) {
        std::vector<HalfEdge> rot;
        for (auto& h : arr) {
          std::string endStr = h.at(1).get<std::string>();
          if (endStr != "tail" && endStr != "head") throw StructureError("bad half-edge end");
          rot.push_back({h.at(0).get<std::string>(), endStr == "tail" ? End::Tail : End::Head});
        }
        c.rotations[v] = rot;
      }
    for (auto& v : c.vertices)
      if (!c.rotations.count(v)) c.rotations[v] = {};
    if (j.contains("passages"))
      for (auto& [e, arr] : j.at("passages").items()) {
        std::vector<Passage> seq;
        for (auto& p : arr) {
          std::string role = p.at("role").get<std::string>();
          std::string sign = p.at("sign").get<std::string>();
          if ((role != "o" && role != "u") || (sign != "+" && sign != "-"))
            throw StructureError("bad passage decoration");
          seq.push_back({p.at("x").get<std::string>(), role == "o" ? Role::Over : Role::Under,
                         sign == "+" ? 1 : -1});
        }
        c.passages[e] = seq;
      }
    for (auto& e : c.edges)
      if (!c.passages.count(e.id)) c.passages[e.id] = {};
    return c;
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad code document: ") + e.what());
  }
}

VsgCode canonical_form(const VsgCode& code) {
  std::map<std::string, std::string> rename;
  int next = 1;
  for (auto& e : code.edges) {
    auto it = code.passages.find(e.id);
    if (it == code.passages.end()) continue;
    for (auto& p : it->second)
      if (!rename.count(p.crossing)) rename[p.crossing] = "c" + std::to_string(next++);
  }
  VsgCode out = code;
  for (auto& [e, seq] : out.passages)
    for (auto& p : seq) p.crossing = rename.at(p.crossing);
  for (auto& [v, rot] : out.rotations) rot = least_rotation(rot);
  return out;
}

std::map<std::pair<std::string, std::string>, std::vector<Arrow>> arrow_sets(const VsgCode& code) {
  struct Occ {
    std::string edge;
    int sign;
  };
  std::map<std::string, Occ> under, over;
  for (auto& e : code.edges) {
    auto it = code.passages.find(e.id);
    if (it == code.passages.end()) continue;
    for (auto& p : it->second)
      (p.role == Role::Under ? under : over)[p.crossing] = {e.id, p.sign};
  }
  std::map<std::pair<std::string, std::string>, std::vector<Arrow>> out;
  // deterministic order: scan under-passages along edges in list order
  for (auto& e : code.edges) {
    auto it = code.passages.find(e.id);
    if (it == code.passages.end()) continue;
    for (auto& p : it->second) {
      if (p.role != Role::Under) continue;
      auto ov = over.find(p.crossing);
      if (ov == over.end()) continue;
      out[{e.id, ov->second.edge}].push_back({p.crossing, p.sign});
    }
  }
  return out;
}

ShadowCode shadow(const VsgCode& code) {
  ShadowCode s;
  s.vertices = code.vertices;
  s.edges = code.edges;
  s.rotations = code.rotations;
  for (auto& [e, seq] : code.passages) {
    auto& out = s.passages[e];
    for (auto& p : seq) out.push_back(p.crossing);
  }
  return s;
}

VsgCode reverse_edge(const VsgCode& code, const std::string& edge_id) {
  VsgCode out = code;
  EdgeRec* er = nullptr;
  for (auto& e : out.edges)
    if (e.id == edge_id) er = &e;
  if (!er) throw StructureError("unknown edge: " + edge_id);

  std::map<std::string, int> on_edge;
  for (auto& p : out.passages[edge_id]) on_edge[p.crossing]++;
  auto& seq = out.passages[edge_id];
  std::reverse(seq.begin(), seq.end());
  for (auto& [e, ps] : out.passages)
    for (auto& p : ps)
      if (on_edge[p.crossing] == 1) p.sign = -p.sign;

  std::swap(er->tail, er->head);
  for (auto& [v, rot] : out.rotations)
    for (auto& h : rot)
      if (h.edge == edge_id) h.end = h.end == End::Tail ? End::Head : End::Tail;
  return out;
}

VsgCode disjoint_union(const VsgCode& a, const VsgCode& b, const std::string& prefix) {
  VsgCode out = a;
  for (auto& v : b.vertices) out.vertices.push_back(prefix + v);
  for (auto& e : b.edges) out.edges.push_back({prefix + e.id, prefix + e.tail, prefix + e.head});
  for (auto& [v, rot] : b.rotations) {
    auto& r = out.rotations[prefix + v];
    for (auto& h : rot) r.push_back({prefix + h.edge, h.end});
  }
  for (auto& [e, seq] : b.passages) {
    auto& s = out.passages[prefix + e];
    for (auto& p : seq) s.push_back({prefix + p.crossing, p.role, p.sign});
  }
  return out;
}

}  // namespace vsg
