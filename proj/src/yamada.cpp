#include "vsg/yamada.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <set>
#include <unordered_map>

#include "vsg/diagram.hpp"

namespace vsg {

namespace {

// ---- graph_eval -------------------------------------------------------------

std::string graph_key(const StateGraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (auto [u, v] : g.edges) es.push_back({std::min(u, v), std::max(u, v)});
  std::sort(es.begin(), es.end());
  std::string k = std::to_string(g.vertex_count) + ";";
  for (auto& [u, v] : es) k += std::to_string(u) + "-" + std::to_string(v) + ",";
  return k;
}

using Memo = std::unordered_map<std::string, LaurentPoly>;

LaurentPoly eval_rec(const StateGraph& g, Memo& memo);

// components of the edge set, never crossing through `split_at` (-1: none)
std::vector<std::vector<int>> edge_components(const StateGraph& g, int split_at) {
  int m = static_cast<int>(g.edges.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::map<int, int> first_edge_at;
  for (int i = 0; i < m; ++i) {
    for (int v : {g.edges[i].first, g.edges[i].second}) {
      if (v == split_at) continue;
      auto it = first_edge_at.find(v);
      if (it == first_edge_at.end())
        first_edge_at[v] = i;
      else
        parent[find(i)] = find(it->second);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < m; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [r, es] : groups) out.push_back(es);
  return out;
}

StateGraph subgraph(const StateGraph& g, const std::vector<int>& edge_idx) {
  StateGraph s;
  std::map<int, int> remap;
  for (int i : edge_idx) {
    for (int v : {g.edges[i].first, g.edges[i].second})
      if (!remap.count(v)) remap[v] = s.vertex_count++;
    s.edges.push_back({remap[g.edges[i].first], remap[g.edges[i].second]});
  }
  return s;
}

LaurentPoly eval_connected(const StateGraph& g, Memo& memo) {
  // g has no isolated vertices here and is edge-connected
  std::set<int> verts;
  for (auto& [u, v] : g.edges) {
    verts.insert(u);
    verts.insert(v);
  }
  if (verts.size() == 1) {  // bouquet B_n, n >= 1
    LaurentPoly msig = -LaurentPoly::sigma();
    return -msig.pow(static_cast<unsigned>(g.edges.size()));
  }

  // wedge split at a cut vertex: R(G1 v G2) = -R(G1) R(G2)
  for (int v : verts) {
    auto comps = edge_components(g, v);
    if (comps.size() > 1) {
      LaurentPoly prod = LaurentPoly::one();
      for (auto& c : comps) prod = prod * eval_rec(subgraph(g, c), memo);
      int sign = (comps.size() - 1) % 2 ? -1 : 1;
      return prod.shifted(sign, 0);
    }
  }

  // deletion-contraction on the first non-loop edge
  int pick = -1;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    if (g.edges[i].first != g.edges[i].second) {
      pick = i;
      break;
    }
  if (pick < 0) throw StructureError("eval_connected: loops should have split off");
  auto [a, b] = g.edges[pick];
  StateGraph del = g;
  del.edges.erase(del.edges.begin() + pick);
  StateGraph con = g;
  con.edges.erase(con.edges.begin() + pick);
  for (auto& [u, v] : con.edges) {
    if (u == b) u = a;
    if (v == b) v = a;
    if (u > b) --u;
    if (v > b) --v;
  }
  con.vertex_count = g.vertex_count - 1;
  return eval_rec(del, memo) + eval_rec(con, memo);
}

LaurentPoly eval_rec(const StateGraph& g, Memo& memo) {
  std::string key = graph_key(g);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  std::set<int> touched;
  for (auto& [u, v] : g.edges) {
    touched.insert(u);
    touched.insert(v);
  }
  int isolated = g.vertex_count - static_cast<int>(touched.size());
  LaurentPoly result = LaurentPoly::monomial(isolated % 2 ? -1 : 1, 0);  // R(point) = -1 each

  auto comps = edge_components(g, -1);
  for (auto& c : comps) result = result * eval_connected(subgraph(g, c), memo);

  memo[key] = result;
  return result;
}

// ---- ports and connections of the abstract diagram ---------------------------

struct PortModel {
  int nv = 0;
  std::vector<std::string> labels;  // crossings, first-occurrence order
  std::vector<int> signs;
  std::vector<int> vport_base;  // per vertex
  int vports_total = 0;
  std::vector<int> conn;  // port -> partner port

  int total_ports() const { return vports_total + 4 * static_cast<int>(labels.size()); }
  int cport(int ci, int slot) const { return vports_total + 4 * ci + slot; }
  bool is_cport(int p) const { return p >= vports_total; }
  int cindex(int p) const { return (p - vports_total) / 4; }
};

PortModel build_ports(const VsgCode& code) {
  PortModel m;
  m.nv = static_cast<int>(code.vertices.size());
  std::map<std::string, int> vidx, cidx;
  for (int i = 0; i < m.nv; ++i) vidx[code.vertices[i]] = i;
  for (auto& e : code.edges)
    for (auto& p : code.passages.at(e.id))
      if (!cidx.count(p.crossing)) {
        cidx[p.crossing] = static_cast<int>(m.labels.size());
        m.labels.push_back(p.crossing);
        m.signs.push_back(p.sign);
      }
  m.vport_base.resize(m.nv);
  int base = 0;
  for (int i = 0; i < m.nv; ++i) {
    m.vport_base[i] = base;
    base += code.degree(code.vertices[i]);
  }
  m.vports_total = base;

  auto vport = [&](const std::string& v, const HalfEdge& h) {
    auto& rot = code.rotations.at(v);
    for (size_t i = 0; i < rot.size(); ++i)
      if (rot[i] == h) return m.vport_base[vidx[v]] + static_cast<int>(i);
    throw StructureError("half-edge missing from rotation");
  };

  m.conn.assign(m.total_ports(), -1);
  auto link = [&](int a, int b) {
    m.conn[a] = b;
    m.conn[b] = a;
  };
  for (auto& e : code.edges) {
    int prev = vport(e.tail, {e.id, End::Tail});
    for (auto& p : code.passages.at(e.id)) {
      int ci = cidx[p.crossing];
      link(prev, m.cport(ci, crossing_slot(p.sign, p.role, true)));
      prev = m.cport(ci, crossing_slot(p.sign, p.role, false));
    }
    link(prev, vport(e.head, {e.id, End::Head}));
  }
  return m;
}

// resolution digits: 0 = A, 1 = B, 2 = keep as a degree-4 vertex
StateGraph resolve_state(const PortModel& m, const std::vector<int>& digits) {
  int nc = static_cast<int>(m.labels.size());
  std::vector<int> joint(m.total_ports(), -1);
  std::vector<int> kept;  // crossing index -> node id offset
  int kept_count = 0;
  std::vector<int> kept_node(nc, -1);
  for (int ci = 0; ci < nc; ++ci) {
    int s = m.signs[ci];
    int oi = m.cport(ci, crossing_slot(s, Role::Over, true));
    int oo = m.cport(ci, crossing_slot(s, Role::Over, false));
    int ui = m.cport(ci, crossing_slot(s, Role::Under, true));
    int uo = m.cport(ci, crossing_slot(s, Role::Under, false));
    int d = digits[ci];
    if (d == 2) {
      kept_node[ci] = kept_count++;
      kept.push_back(ci);
      continue;
    }
    bool a_orient = (s > 0) == (d == 0);  // the orientation-respecting reconnection
    if (a_orient) {
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

  auto terminal_node = [&](int p) -> int {
    if (!m.is_cport(p)) {
      int v = 0;
      while (v + 1 < m.nv && m.vport_base[v + 1] <= p) ++v;
      return v;
    }
    int ci = m.cindex(p);
    return kept_node[ci] >= 0 ? m.nv + kept_node[ci] : -1;
  };

  StateGraph g;
  g.vertex_count = m.nv + kept_count;
  std::vector<bool> seen(m.total_ports(), false);
  for (int p = 0; p < m.total_ports(); ++p) {
    if (seen[p] || terminal_node(p) < 0) continue;
    // walk from terminal to terminal through smoothing joints
    int start = terminal_node(p);
    int cur = p;
    seen[cur] = true;
    for (;;) {
      int q = m.conn[cur];
      seen[q] = true;
      int tn = terminal_node(q);
      if (tn >= 0) {
        g.edges.push_back({start, tn});
        break;
      }
      cur = joint[q];
      seen[cur] = true;
    }
  }
  // remaining cycles are free loops: each evaluates as a B_1 component
  for (int p = 0; p < m.total_ports(); ++p) {
    if (seen[p]) continue;
    int cur = p;
    while (!seen[cur]) {
      seen[cur] = true;
      int q = m.conn[cur];
      seen[q] = true;
      cur = joint[q];
    }
    int v = g.vertex_count++;
    g.edges.push_back({v, v});
  }
  return g;
}

}  // namespace

LaurentPoly graph_eval(const StateGraph& g) {
  Memo memo;
  return eval_rec(g, memo);
}

LaurentPoly yamada(const VsgCode& code, const YamadaOptions& opts) {
  require_valid(code);
  PortModel m = build_ports(code);
  int nc = static_cast<int>(m.labels.size());
  if (nc > opts.max_crossings)
    throw BudgetError("yamada: " + std::to_string(nc) + " crossings exceed the budget of " +
                      std::to_string(opts.max_crossings));

  long long total = 1;
  for (int i = 0; i < nc; ++i) total *= 3;

  auto eval_range = [&](long long lo, long long hi) {
    Memo memo;
    LaurentPoly sum;
    std::vector<int> digits(nc);
    for (long long s = lo; s < hi; ++s) {
      long long x = s;
      int weight = 0;
      for (int i = 0; i < nc; ++i) {
        digits[i] = static_cast<int>(x % 3);
        x /= 3;
        if (digits[i] == 0) ++weight;
        if (digits[i] == 1) --weight;
      }
      StateGraph g = resolve_state(m, digits);
      sum = sum + graph_eval(g).shifted(1, weight);
    }
    return sum;
  };

  int workers = std::max(1, opts.workers);
  if (workers == 1 || total < 64) return eval_range(0, total);

  std::vector<std::future<LaurentPoly>> parts;
  long long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long lo = w * chunk, hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    parts.push_back(std::async(std::launch::async, eval_range, lo, hi));
  }
  LaurentPoly sum;
  for (auto& f : parts) sum = sum + f.get();  // fixed combine order keeps output deterministic
  return sum;
}

NormalizedYamada yamada_normalized(const VsgCode& code, const YamadaOptions& opts) {
  LaurentPoly r = yamada(code, opts);
  if (r.is_zero()) return {true, LaurentPoly::zero()};
  int mexp = r.min_exponent();
  return {false, r.shifted(mexp % 2 ? -1 : 1, -mexp)};  // (-A)^-m R
}

}  // namespace vsg
