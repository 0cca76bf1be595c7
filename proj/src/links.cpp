#include "vsg/links.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace vsg {

using nlohmann::json;

int VirtualLink::crossing_count() const {
  std::set<std::string> labels;
  for (auto& comp : components)
    for (auto& p : comp) labels.insert(p.crossing);
  return static_cast<int>(labels.size());
}

std::string VirtualLink::to_json() const {
  json j;
  j["version"] = 1;
  j["components"] = json::array();
  for (auto& comp : components) {
    json arr = json::array();
    for (auto& p : comp)
      arr.push_back({{"x", p.crossing},
                     {"role", p.role == Role::Over ? "o" : "u"},
                     {"sign", p.sign > 0 ? "+" : "-"}});
    j["components"].push_back({{"anchor", 0}, {"passages", arr}});
  }
  return j.dump();
}

VirtualLink VirtualLink::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad link JSON: ") + e.what());
  }
  VirtualLink l;
  try {
    for (auto& comp : j.at("components")) {
      std::vector<Passage> seq;
      int anchor = comp.value("anchor", 0);
      auto& arr = comp.at("passages");
      int n = static_cast<int>(arr.size());
      for (int i = 0; i < n; ++i) {
        auto& p = arr.at((anchor + i) % std::max(1, n));
        seq.push_back({p.at("x").get<std::string>(),
                       p.at("role").get<std::string>() == "o" ? Role::Over : Role::Under,
                       p.at("sign").get<std::string>() == "+" ? 1 : -1});
      }
      l.components.push_back(seq);
    }
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad link document: ") + e.what());
  }
  return l;
}

std::vector<std::vector<Replacement>> enumerate_replacements(const VsgCode& code) {
  require_valid(code);
  std::vector<std::vector<Replacement>> per_vertex;
  for (auto& v : code.vertices) {
    auto& rot = code.rotations.at(v);
    std::vector<Replacement> choices;
    for (size_t i = 0; i < rot.size(); ++i)
      for (size_t j = i + 1; j < rot.size(); ++j) choices.push_back({v, rot[i], rot[j]});
    per_vertex.push_back(choices);
  }
  for (auto& pv : per_vertex)
    if (pv.empty()) return {};
  std::vector<std::vector<Replacement>> out;
  std::vector<Replacement> cur;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == per_vertex.size()) {
      out.push_back(cur);
      return;
    }
    for (auto& c : per_vertex[k]) {
      cur.push_back(c);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// minimal serialization with crossing labels renamed by first appearance
std::string link_key(const std::vector<std::vector<Passage>>& comps) {
  std::string out;
  std::map<std::string, int> rename;
  int next = 1;
  for (auto& comp : comps) {
    out += "|";
    for (auto& p : comp) {
      auto [it, fresh] = rename.emplace(p.crossing, next);
      if (fresh) ++next;
      out += std::to_string(it->second);
      out += p.role == Role::Over ? 'o' : 'u';
      out += p.sign > 0 ? '+' : '-';
      out += ';';
    }
  }
  return out;
}

VirtualLink canonical_link(std::vector<std::vector<Passage>> comps) {
  // anchor candidates: rotations minimizing the label-free (role, sign) word
  std::vector<std::vector<size_t>> anchors;
  for (auto& c : comps) {
    std::vector<size_t> cand;
    if (c.empty()) {
      cand.push_back(0);
    } else {
      std::string best;
      for (size_t s = 0; s < c.size(); ++s) {
        std::string w;
        for (size_t i = 0; i < c.size(); ++i) {
          const Passage& p = c[(s + i) % c.size()];
          w += p.role == Role::Over ? 'o' : 'u';
          w += p.sign > 0 ? '+' : '-';
        }
        if (cand.empty() || w < best) {
          best = w;
          cand = {s};
        } else if (w == best) {
          cand.push_back(s);
        }
      }
    }
    anchors.push_back(cand);
  }

  long long combos = 1;
  for (auto& a : anchors) combos *= static_cast<long long>(a.size());
  if (comps.size() > 8 || combos > 100000)
    throw BudgetError("link canonicalization beyond budget");

  std::string best_key;
  std::vector<std::vector<Passage>> best;
  std::vector<int> perm(comps.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<size_t> pick(comps.size(), 0);
    for (;;) {
      std::vector<std::vector<Passage>> cand;
      for (size_t k = 0; k < perm.size(); ++k) {
        auto& c = comps[perm[k]];
        std::vector<Passage> rc;
        if (!c.empty()) {
          size_t s = anchors[perm[k]][pick[k]];
          for (size_t i = 0; i < c.size(); ++i) rc.push_back(c[(s + i) % c.size()]);
        }
        cand.push_back(std::move(rc));
      }
      std::string key = link_key(cand);
      if (best_key.empty() || key < best_key) {
        best_key = key;
        best = cand;
      }
      size_t k = 0;
      while (k < pick.size() && ++pick[k] == anchors[perm[k]].size()) pick[k++] = 0;
      if (k == pick.size() || pick.empty()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::map<std::string, std::string> rename;
  int next = 1;
  for (auto& comp : best)
    for (auto& p : comp) {
      if (!rename.count(p.crossing)) rename[p.crossing] = "c" + std::to_string(next++);
      p.crossing = rename[p.crossing];
    }
  VirtualLink out;
  out.components = best;
  return out;
}

}  // namespace

VirtualLink link_of(const VsgCode& code, const std::vector<Replacement>& choice) {
  require_valid(code);
  if (choice.size() != code.vertices.size())
    throw StructureError("replacement choice must cover every vertex");

  std::map<HalfEdge, HalfEdge> join;
  for (auto& r : choice) {
    auto& rot = code.rotations.at(r.vertex);
    auto has = [&](const HalfEdge& h) { return std::find(rot.begin(), rot.end(), h) != rot.end(); };
    if (!has(r.a) || !has(r.b) || r.a == r.b)
      throw StructureError("replacement pair not incident to " + r.vertex);
    join[r.a] = r.b;
    join[r.b] = r.a;
  }

  struct Step {
    std::string edge;
    bool forward;
  };
  std::set<std::string> visited;
  std::vector<std::vector<Step>> closed;
  std::set<std::string> dead;

  for (auto& e0 : code.edges) {
    if (visited.count(e0.id)) continue;
    std::vector<Step> path = {{e0.id, true}};
    visited.insert(e0.id);
    bool is_closed = false;
    for (;;) {
      Step cur = path.back();
      HalfEdge out_end{cur.edge, cur.forward ? End::Head : End::Tail};
      auto it = join.find(out_end);
      if (it == join.end()) break;  // free end
      const HalfEdge& nxt = it->second;
      HalfEdge start_in{path.front().edge, path.front().forward ? End::Tail : End::Head};
      if (nxt == start_in) {
        is_closed = true;
        break;
      }
      if (visited.count(nxt.edge)) break;  // re-entry along an open strand
      path.push_back({nxt.edge, nxt.end == End::Tail});
      visited.insert(nxt.edge);
    }
    if (!is_closed) {
      for (;;) {
        Step cur = path.front();
        HalfEdge in_end{cur.edge, cur.forward ? End::Tail : End::Head};
        auto it = join.find(in_end);
        if (it == join.end()) break;
        const HalfEdge& prv = it->second;
        if (visited.count(prv.edge)) break;
        path.insert(path.begin(), {prv.edge, prv.end == End::Head});
        visited.insert(prv.edge);
      }
      for (auto& st : path) dead.insert(st.edge);
    } else {
      closed.push_back(path);
    }
  }

  // a crossing survives only when both passages sit on closed components
  std::set<std::string> dead_labels;
  for (auto& eid : dead)
    for (auto& p : code.passages.at(eid)) dead_labels.insert(p.crossing);

  // canonical orientation per component: its least edge id runs forward
  std::map<std::string, bool> edge_reversed;
  std::vector<std::vector<Step>> oriented_comps;
  for (auto& path : closed) {
    std::string least;
    bool least_fwd = true;
    for (auto& st : path)
      if (least.empty() || st.edge < least) {
        least = st.edge;
        least_fwd = st.forward;
      }
    std::vector<Step> oriented = path;
    if (!least_fwd) {
      std::reverse(oriented.begin(), oriented.end());
      for (auto& st : oriented) st.forward = !st.forward;
    }
    for (auto& st : oriented) edge_reversed[st.edge] = !st.forward;
    oriented_comps.push_back(std::move(oriented));
  }

  // sign flips: one per traversal-reversed edge carrying the crossing
  std::map<std::string, int> flip;
  for (auto& [eid, rev] : edge_reversed) {
    if (!rev) continue;
    for (auto& p : code.passages.at(eid))
      if (!dead_labels.count(p.crossing)) flip[p.crossing] ^= 1;
  }

  std::vector<std::vector<Passage>> comps;
  for (auto& oriented : oriented_comps) {
    std::vector<Passage> seq;
    for (auto& st : oriented) {
      auto pass = code.passages.at(st.edge);
      if (!st.forward) std::reverse(pass.begin(), pass.end());
      for (auto& p : pass) {
        if (dead_labels.count(p.crossing)) continue;
        Passage q = p;
        if (flip.count(q.crossing) && flip[q.crossing]) q.sign = -q.sign;
        seq.push_back(q);
      }
    }
    comps.push_back(std::move(seq));
  }

  return canonical_link(comps);
}

std::vector<VirtualLink> tg(const VsgCode& code, const TgOptions& opts) {
  auto choices = enumerate_replacements(code);
  if (static_cast<long long>(choices.size()) > opts.max_choices)
    throw BudgetError("tg: replacement count exceeds the budget");
  std::vector<VirtualLink> out;
  for (auto& ch : choices) {
    VirtualLink l = link_of(code, ch);
    if (!opts.include_empty && l.components.empty()) continue;
    out.push_back(std::move(l));
  }
  std::sort(out.begin(), out.end(),
            [](const VirtualLink& a, const VirtualLink& b) { return a.to_json() < b.to_json(); });
  if (opts.distinct)
    out.erase(std::unique(out.begin(), out.end(),
                          [](const VirtualLink& a, const VirtualLink& b) {
                            return a.to_json() == b.to_json();
                          }),
              out.end());
  return out;
}

long long linking_halves(const VirtualLink& link, int i, int j) {
  int n = static_cast<int>(link.components.size());
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw StructureError("linking number needs two distinct components");
  std::map<std::string, std::pair<int, int>> where;
  std::map<std::string, int> sign;
  for (int k : {i, j})
    for (auto& p : link.components[k]) {
      auto& w = where[p.crossing];
      (k == i ? w.first : w.second)++;
      sign[p.crossing] = p.sign;
    }
  long long halves = 0;
  for (auto& [label, w] : where)
    if (w.first == 1 && w.second == 1) halves += sign[label];
  return halves;
}

namespace {

struct LinkPorts {
  struct Ends {
    int in[2] = {-1, -1};  // [over, under]
    int out[2] = {-1, -1};
    int sign = 1;
  };
  std::map<std::string, Ends> crossings;
  std::vector<std::pair<int, int>> connections;
  int free_loops = 0;
  int ports = 0;
};

LinkPorts build_link_ports(const VirtualLink& link) {
  LinkPorts m;
  for (auto& comp : link.components) {
    if (comp.empty()) {
      ++m.free_loops;
      continue;
    }
    int first_in = -1, prev_out = -1;
    for (auto& p : comp) {
      auto& e = m.crossings[p.crossing];
      e.sign = p.sign;
      int rin = m.ports++, rout = m.ports++;
      int which = p.role == Role::Over ? 0 : 1;
      e.in[which] = rin;
      e.out[which] = rout;
      if (prev_out >= 0)
        m.connections.push_back({prev_out, rin});
      else
        first_in = rin;
      prev_out = rout;
    }
    m.connections.push_back({prev_out, first_in});
  }
  return m;
}

}  // namespace

LaurentPoly bracket(const VirtualLink& link, const BracketOptions& opts) {
  int nc = link.crossing_count();
  if (nc > opts.max_crossings) throw BudgetError("bracket: crossing count exceeds the budget");
  if (link.components.empty()) return LaurentPoly::one();

  LinkPorts m = build_link_ports(link);
  std::vector<std::string> labels;
  for (auto& [l, e] : m.crossings) {
    labels.push_back(l);
    if (e.in[0] < 0 || e.in[1] < 0 || e.out[0] < 0 || e.out[1] < 0)
      throw StructureError("bracket: crossing " + l + " is not visited as over and under");
  }

  std::vector<int> conn(m.ports, -1);
  for (auto& [a, b] : m.connections) {
    conn[a] = b;
    conn[b] = a;
  }

  LaurentPoly delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
  LaurentPoly sum;
  for (long long state = 0; state < (1ll << nc); ++state) {
    std::vector<int> joint(m.ports, -1);
    int weight = 0;
    for (int i = 0; i < nc; ++i) {
      auto& e = m.crossings[labels[i]];
      bool a_smoothing = !((state >> i) & 1);
      weight += a_smoothing ? 1 : -1;
      bool orient_respecting = (e.sign > 0) == a_smoothing;
      int oi = e.in[0], ui = e.in[1], oo = e.out[0], uo = e.out[1];
      if (orient_respecting) {
        joint[ui] = oo;
        joint[oo] = ui;
        joint[oi] = uo;
        joint[uo] = oi;
      } else {
        joint[ui] = oi;
        joint[oi] = ui;
        joint[uo] = oo;
        joint[oo] = uo;
      }
    }
    int loops = m.free_loops;
    std::vector<bool> seen(m.ports, false);
    for (int p = 0; p < m.ports; ++p) {
      if (seen[p]) continue;
      ++loops;
      int cur = p;
      while (!seen[cur]) {
        seen[cur] = true;
        int q = conn[cur];
        seen[q] = true;
        cur = joint[q];
      }
    }
    sum = sum + delta.pow(static_cast<unsigned>(loops - 1)).shifted(1, weight);
  }
  return sum;
}

int writhe(const VirtualLink& link) {
  std::map<std::string, int> sign;
  for (auto& comp : link.components)
    for (auto& p : comp) sign[p.crossing] = p.sign;
  int w = 0;
  for (auto& [l, s] : sign) w += s;
  return w;
}

LaurentPoly f_poly(const VirtualLink& link, const BracketOptions& opts) {
  LaurentPoly b = bracket(link, opts);
  int w = writhe(link);
  return b.shifted(w % 2 ? -1 : 1, -3 * w);  // (-A^3)^(-w)
}

std::string invariant_tuple(const VirtualLink& link) {
  int n = static_cast<int>(link.components.size());
  std::vector<long long> lks;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lks.push_back(linking_halves(link, i, j));
  std::sort(lks.begin(), lks.end());
  std::string out = "comps=" + std::to_string(n) + ";lk2=[";
  for (size_t i = 0; i < lks.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(lks[i]);
  }
  out += "];f=" + f_poly(link).to_string();
  return out;
}

}  // namespace vsg
