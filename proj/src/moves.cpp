#include "vsg/moves.hpp"

#include <algorithm>
#include <array>
#include <map>

#include <json.hpp>

namespace vsg {

using nlohmann::json;

std::string move_name(MoveId m) {
  switch (m) {
    case MoveId::I: return "I";
    case MoveId::II: return "II";
    case MoveId::III: return "III";
    case MoveId::IV: return "IV";
    case MoveId::V: return "V";
    case MoveId::VI: return "VI";
    case MoveId::VIstar: return "VI*";
    case MoveId::VIIstar: return "VII*";
    case MoveId::VIIIstar: return "VIII*";
  }
  return "?";
}

MoveId move_from_name(const std::string& s) {
  for (MoveId m : {MoveId::I, MoveId::II, MoveId::III, MoveId::IV, MoveId::V, MoveId::VI,
                   MoveId::VIstar, MoveId::VIIstar, MoveId::VIIIstar})
    if (move_name(m) == s) return m;
  throw StructureError("unknown move id: " + s);
}

bool is_forbidden(MoveId m) {
  return m == MoveId::VIstar || m == MoveId::VIIstar || m == MoveId::VIIIstar;
}

bool MoveSet::allows(MoveId m) const {
  if (is_forbidden(m)) return forbidden.count(m) > 0;
  if (m == MoveId::VI) return pliable;
  return true;
}

std::string MoveSite::to_json() const {
  json j;
  j["move"] = move_name(move);
  j["dir"] = dir;
  switch (move) {
    case MoveId::I:
      j["edge"] = edge;
      j["pos"] = pos;
      j["role"] = role == Role::Over ? "o" : "u";
      j["sign"] = sign > 0 ? "+" : "-";
      break;
    case MoveId::II:
      j["edge"] = edge;
      j["pos"] = pos;
      j["edge2"] = edge2;
      j["pos2"] = pos2;
      j["rev"] = flag;
      j["sign"] = sign > 0 ? "+" : "-";
      if (start) j["start"] = start;  // 1: the under pair sits first at a tied gap
      break;
    case MoveId::III: {
      json arr = json::array();
      for (auto& [e, p] : pairs) arr.push_back(json::array({e, p}));
      j["pairs"] = arr;
      break;
    }
    case MoveId::IV:
      j["vertex"] = vertex;
      j["edge"] = edge;
      j["pos"] = pos;
      j["role"] = role == Role::Over ? "o" : "u";
      j["start"] = start;
      j["rotDir"] = rot_dir;
      break;
    case MoveId::V:
      j["vertex"] = vertex;
      j["twist"] = twist;
      break;
    case MoveId::VI:
      j["vertex"] = vertex;
      j["k"] = k;
      j["earlierOver"] = flag;
      break;
    case MoveId::VIstar:
      j["vertex"] = vertex;
      break;
    case MoveId::VIIstar:
      j["vertex"] = vertex;
      j["k"] = k;
      break;
    case MoveId::VIIIstar:
      j["edge"] = edge;
      j["pos"] = pos;
      break;
  }
  if (!labels.empty()) j["labels"] = labels;
  return j.dump();
}

MoveSite MoveSite::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad move site JSON: ") + e.what());
  }
  MoveSite s;
  try {
    s.move = move_from_name(j.at("move").get<std::string>());
    s.dir = j.value("dir", "apply");
    s.edge = j.value("edge", "");
    s.edge2 = j.value("edge2", "");
    s.vertex = j.value("vertex", "");
    s.pos = j.value("pos", 0);
    s.pos2 = j.value("pos2", 0);
    if (j.contains("role")) s.role = j.at("role").get<std::string>() == "o" ? Role::Over : Role::Under;
    if (j.contains("sign")) s.sign = j.at("sign").get<std::string>() == "+" ? 1 : -1;
    s.flag = j.value("rev", false) || j.value("earlierOver", false);
    s.k = j.value("k", 0);
    s.start = j.value("start", 0);
    s.rot_dir = j.value("rotDir", 1);
    s.twist = j.value("twist", 1);
    if (j.contains("pairs"))
      for (auto& pr : j.at("pairs")) s.pairs.push_back({pr.at(0).get<std::string>(), pr.at(1).get<int>()});
    if (j.contains("labels"))
      for (auto& l : j.at("labels")) s.labels.push_back(l.get<std::string>());
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad move site fields: ") + e.what());
  }
  return s;
}

namespace {

struct Loc {
  std::string edge;
  int idx;
  bool operator<(const Loc& o) const { return edge != o.edge ? edge < o.edge : idx < o.idx; }
  bool operator==(const Loc& o) const = default;
};

std::vector<std::string> fresh_labels(const VsgCode& c, int n,
                                      const std::vector<std::string>& requested = {}) {
  std::set<std::string> used;
  for (auto& [e, seq] : c.passages)
    for (auto& p : seq) used.insert(p.crossing);
  std::vector<std::string> out;
  for (auto& r : requested) {
    if (static_cast<int>(out.size()) == n) break;
    if (!used.count(r)) {
      out.push_back(r);
      used.insert(r);
    }
  }
  for (int k = 1; static_cast<int>(out.size()) < n; ++k) {
    std::string name = "c" + std::to_string(k);
    if (!used.count(name)) {
      out.push_back(name);
      used.insert(name);
    }
  }
  return out;
}

void delete_locs(VsgCode& c, std::vector<Loc> locs) {
  std::sort(locs.begin(), locs.end());
  for (auto it = locs.rbegin(); it != locs.rend(); ++it) {
    auto& seq = c.passages.at(it->edge);
    if (it->idx < 0 || it->idx >= static_cast<int>(seq.size()))
      throw StructureError("passage index out of range");
    seq.erase(seq.begin() + it->idx);
  }
}


const Passage& passage_at(const VsgCode& c, const Loc& l) {
  auto it = c.passages.find(l.edge);
  if (it == c.passages.end() || l.idx < 0 || l.idx >= static_cast<int>(it->second.size()))
    throw StructureError("passage index out of range");
  return it->second[l.idx];
}

int orient(const HalfEdge& h) { return h.end == End::Tail ? 1 : -1; }

// ---- move III: the table of geometrically realizable triangles ----

struct Pair3 {
  int lab[2];
  Role role[2];
  int sign[2];
};

std::string encode_pair(const Pair3& p) {
  std::string s;
  for (int i = 0; i < 2; ++i) {
    s += static_cast<char>('a' + p.lab[i]);
    s += p.role[i] == Role::Over ? 'o' : 'u';
    s += p.sign[i] > 0 ? '+' : '-';
  }
  return s;
}

std::string encode_fragment(std::vector<Pair3> pairs) {
  std::vector<std::string> enc;
  for (auto& p : pairs) enc.push_back(encode_pair(p));
  std::sort(enc.begin(), enc.end());
  return enc[0] + "|" + enc[1] + "|" + enc[2];
}

// Three directed lines in general position: every height order, every
// orientation, both chiralities. A fragment records each strand's two
// passages in order along the strand.
const std::set<std::string>& valid_triangles() {
  static const std::set<std::string> table = [] {
    std::set<std::string> out;
    auto cross_id = [](int a, int b) {
      int lo = std::min(a, b), hi = std::max(a, b);
      if (lo == 0 && hi == 1) return 0;
      if (lo == 0 && hi == 2) return 1;
      return 2;
    };
    const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int chir = 0; chir < 2; ++chir) {
      double M = chir == 0 ? 1.0 : -1.0;
      struct L {
        double bx, by, dx, dy;
      } lines[3] = {
          {M * -10, 0, M * 1, 0},    // y = 0
          {M * -10, -10, M * 1, 1},  // y = x
          {M * -10, 12, M * 1, -1},  // y = -x + 2
      };
      const double pts[3][2] = {{M * 0, 0}, {M * 2, 0}, {M * 1, 1}};  // crossings 01, 02, 12
      for (auto& h : perm)                                            // h[i] = height of line i
        for (int mask = 0; mask < 8; ++mask) {
          std::vector<Pair3> frag;
          for (int i = 0; i < 3; ++i) {
            int oi = (mask >> i) & 1 ? -1 : 1;
            double dxi = oi * lines[i].dx, dyi = oi * lines[i].dy;
            int others[2], ci = 0;
            for (int j = 0; j < 3; ++j)
              if (j != i) others[ci++] = j;
            auto param = [&](int j) {
              int id = cross_id(i, j);
              return (pts[id][0] - lines[i].bx) * dxi + (pts[id][1] - lines[i].by) * dyi;
            };
            if (param(others[0]) > param(others[1])) std::swap(others[0], others[1]);
            Pair3 pr;
            for (int t = 0; t < 2; ++t) {
              int j = others[t];
              int oj = (mask >> j) & 1 ? -1 : 1;
              double dxj = oj * lines[j].dx, dyj = oj * lines[j].dy;
              bool over = h[i] > h[j];
              double det = over ? dxi * dyj - dyi * dxj : dxj * dyi - dyj * dxi;
              pr.lab[t] = cross_id(i, j);
              pr.role[t] = over ? Role::Over : Role::Under;
              pr.sign[t] = det > 0 ? 1 : -1;
            }
            frag.push_back(pr);
          }
          out.insert(encode_fragment(frag));
        }
    }
    // the move is an involution, so the table must be closed under
    // reversing every pair
    for (auto& key : out) {
      std::string k = key;
      std::vector<Pair3> rev;
      for (size_t at = 0; at < k.size(); at += 7) {
        Pair3 p;
        for (int t = 0; t < 2; ++t) {
          p.lab[1 - t] = k[at + 3 * t] - 'a';
          p.role[1 - t] = k[at + 3 * t + 1] == 'o' ? Role::Over : Role::Under;
          p.sign[1 - t] = k[at + 3 * t + 2] == '+' ? 1 : -1;
        }
        rev.push_back(p);
      }
      if (!out.count(encode_fragment(rev)))
        throw std::logic_error("triangle table is not closed under reversal");
    }
    return out;
  }();
  return table;
}

bool triangle_fragment_valid(const std::vector<std::array<Passage, 2>>& pairs) {
  std::vector<std::string> labels;
  for (auto& pr : pairs)
    for (auto& p : pr)
      if (std::find(labels.begin(), labels.end(), p.crossing) == labels.end())
        labels.push_back(p.crossing);
  if (labels.size() != 3) return false;
  const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& pm : perm) {
    std::vector<Pair3> frag;
    for (auto& pr : pairs) {
      Pair3 f;
      for (int t = 0; t < 2; ++t) {
        auto idx = std::find(labels.begin(), labels.end(), pr[t].crossing) - labels.begin();
        f.lab[t] = pm[idx];
        f.role[t] = pr[t].role;
        f.sign[t] = pr[t].sign;
      }
      frag.push_back(f);
    }
    if (valid_triangles().count(encode_fragment(frag))) return true;
  }
  return false;
}

// ---- move V: half-twist braid schedule ----

// Adjacent-swap schedule from the reversed order back to the original;
// each swap is one crossing, in temporal order away from the vertex.
std::vector<std::pair<int, int>> half_twist_swaps(int d) {
  std::vector<int> cur(d);
  for (int i = 0; i < d; ++i) cur[i] = d - 1 - i;
  std::vector<std::pair<int, int>> swaps;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < d; ++i)
      if (cur[i] > cur[i + 1]) {
        swaps.push_back({cur[i + 1], cur[i]});
        std::swap(cur[i], cur[i + 1]);
        moved = true;
      }
  }
  return swaps;
}

VsgCode apply_v_insert(const VsgCode& code, const std::string& vertex, int twist,
                       const std::vector<std::string>& requested = {}) {
  auto itr = code.rotations.find(vertex);
  if (itr == code.rotations.end()) throw StructureError("unknown vertex " + vertex);
  const std::vector<HalfEdge> rot = itr->second;
  int d = static_cast<int>(rot.size());
  if (d < 2) throw StructureError("move V needs vertex degree >= 2");
  auto swaps = half_twist_swaps(d);
  std::vector<std::string> labels = fresh_labels(code, static_cast<int>(swaps.size()), requested);

  VsgCode out = code;
  std::vector<std::vector<Passage>> leg_seq(d);
  for (size_t s = 0; s < swaps.size(); ++s) {
    auto [i, j] = swaps[s];  // i < j in the original rotation
    int sign = twist * orient(rot[i]) * orient(rot[j]);
    Role ri = twist > 0 ? Role::Over : Role::Under;  // earlier leg over for +1
    leg_seq[i].push_back({labels[s], ri, sign});
    leg_seq[j].push_back({labels[s], opposite(ri), sign});
  }
  // tail legs take the block at the front (nearest-vertex first); head legs
  // get it appended reversed (nearest-vertex last)
  for (int i = 0; i < d; ++i) {
    auto& seq = out.passages[rot[i].edge];
    if (rot[i].end == End::Tail)
      seq.insert(seq.begin(), leg_seq[i].begin(), leg_seq[i].end());
    else
      for (auto it = leg_seq[i].rbegin(); it != leg_seq[i].rend(); ++it) seq.push_back(*it);
  }
  auto& r = out.rotations[vertex];
  std::reverse(r.begin(), r.end());
  return out;
}

VsgCode apply_v_delete(const VsgCode& code, const std::string& vertex, int twist, bool* ok,
                       std::vector<std::string>* removed = nullptr) {
  *ok = false;
  auto itr = code.rotations.find(vertex);
  if (itr == code.rotations.end()) return code;
  // the insert reversed the rotation, so the braid schedule is indexed by
  // the pre-move order
  std::vector<HalfEdge> rot = itr->second;
  std::reverse(rot.begin(), rot.end());
  int d = static_cast<int>(rot.size());
  if (d < 2) return code;
  int per_leg = d - 1;

  std::vector<Loc> locs;
  std::vector<std::vector<std::string>> block(d);  // nearest-vertex first
  for (int i = 0; i < d; ++i) {
    auto it = code.passages.find(rot[i].edge);
    if (it == code.passages.end()) return code;
    int len = static_cast<int>(it->second.size());
    int needed = per_leg;
    for (int j = 0; j < d; ++j)
      if (j != i && rot[j].edge == rot[i].edge) needed += per_leg;
    if (len < needed) return code;
    if (rot[i].end == End::Tail)
      for (int t = 0; t < per_leg; ++t) {
        locs.push_back({rot[i].edge, t});
        block[i].push_back(it->second[t].crossing);
      }
    else
      for (int t = 0; t < per_leg; ++t) {
        locs.push_back({rot[i].edge, len - 1 - t});
        block[i].push_back(it->second[len - 1 - t].crossing);
      }
  }
  std::sort(locs.begin(), locs.end());
  if (std::adjacent_find(locs.begin(), locs.end()) != locs.end()) return code;

  // recover the per-swap labels by replaying the schedule against the blocks
  std::vector<std::string> labels;
  {
    std::vector<size_t> at(d, 0);
    for (auto [i, j] : half_twist_swaps(d)) {
      if (at[i] >= block[i].size() || at[j] >= block[j].size()) return code;
      if (block[i][at[i]] != block[j][at[j]]) return code;
      labels.push_back(block[i][at[i]]);
      ++at[i];
      ++at[j];
    }
  }

  VsgCode pre = code;
  delete_locs(pre, locs);
  auto& r = pre.rotations[vertex];
  std::reverse(r.begin(), r.end());
  try {
    if (apply_v_insert(pre, vertex, twist, labels) == code) {
      *ok = true;
      if (removed) *removed = labels;
      return pre;
    }
  } catch (const StructureError&) {
  }
  return code;
}

// ---- move IV ----

// pinned by the fan model: sign = -rho * dir * orient(leg)
int iv_sign(Role mover_role, int rot_dir, const HalfEdge& leg) {
  int rho = mover_role == Role::Over ? 1 : -1;
  return -rho * rot_dir * orient(leg);
}

struct IvParams {
  std::string vertex, edge;
  int pos;
  Role role;
  int start, rot_dir;
  std::vector<std::string> labels;
};

VsgCode apply_iv_insert(const VsgCode& code, const IvParams& s) {
  auto itr = code.rotations.find(s.vertex);
  if (itr == code.rotations.end()) throw StructureError("unknown vertex " + s.vertex);
  const std::vector<HalfEdge> rot = itr->second;
  int d = static_cast<int>(rot.size());
  if (d < 1) throw StructureError("move IV needs vertex degree >= 1");
  if (s.start < 0 || s.start >= d || (s.rot_dir != 1 && s.rot_dir != -1))
    throw StructureError("bad move IV parameters");
  auto itp = code.passages.find(s.edge);
  if (itp == code.passages.end()) throw StructureError("unknown edge " + s.edge);
  if (s.pos < 0 || s.pos > static_cast<int>(itp->second.size()))
    throw StructureError("move IV gap out of range");

  std::vector<std::string> labels = fresh_labels(code, d, s.labels);
  VsgCode out = code;
  std::vector<Passage> block;
  std::vector<HalfEdge> legs;
  for (int i = 0; i < d; ++i) {
    const HalfEdge& leg = rot[((s.start + s.rot_dir * i) % d + d) % d];
    legs.push_back(leg);
    block.push_back({labels[i], s.role, iv_sign(s.role, s.rot_dir, leg)});
  }
  auto& mover = out.passages[s.edge];
  mover.insert(mover.begin() + s.pos, block.begin(), block.end());
  for (int i = 0; i < d; ++i) {
    Passage partner{labels[i], opposite(s.role), block[i].sign};
    auto& seq = out.passages[legs[i].edge];
    if (legs[i].end == End::Tail)
      seq.insert(seq.begin(), partner);
    else
      seq.push_back(partner);
  }
  return out;
}

VsgCode apply_iv_delete(const VsgCode& code, const IvParams& s, bool* ok, int* out_gap) {
  *ok = false;
  auto itr = code.rotations.find(s.vertex);
  if (itr == code.rotations.end()) return code;
  const std::vector<HalfEdge>& rot = itr->second;
  int d = static_cast<int>(rot.size());
  if (d < 1) return code;
  if (s.start < 0 || s.start >= d || (s.rot_dir != 1 && s.rot_dir != -1)) return code;
  auto itp = code.passages.find(s.edge);
  if (itp == code.passages.end()) return code;
  if (s.pos < 0 || s.pos + d > static_cast<int>(itp->second.size())) return code;

  // cheap screens: roles, signs and vertex-end partners must line up before
  // the reconstruct-and-compare pass
  std::vector<Loc> locs;
  for (int i = 0; i < d; ++i) {
    const Passage& p = itp->second[s.pos + i];
    if (p.role != s.role) return code;
    const HalfEdge& leg = rot[((s.start + s.rot_dir * i) % d + d) % d];
    if (p.sign != iv_sign(s.role, s.rot_dir, leg)) return code;
    auto itl = code.passages.find(leg.edge);
    if (itl == code.passages.end() || itl->second.empty()) return code;
    int end_pos = leg.end == End::Tail ? 0 : static_cast<int>(itl->second.size()) - 1;
    const Passage& partner = itl->second[end_pos];
    if (partner.crossing != p.crossing || partner.role != opposite(s.role)) return code;
    locs.push_back({s.edge, s.pos + i});
    locs.push_back({leg.edge, end_pos});
  }
  std::sort(locs.begin(), locs.end());
  if (std::adjacent_find(locs.begin(), locs.end()) != locs.end()) return code;

  VsgCode pre = code;
  delete_locs(pre, locs);
  int gap = s.pos;
  for (auto& l : locs)
    if (l.edge == s.edge && l.idx < s.pos) --gap;
  IvParams ins = s;
  ins.pos = gap;
  ins.labels.clear();
  for (int i = 0; i < d; ++i) ins.labels.push_back(itp->second[s.pos + i].crossing);
  try {
    if (apply_iv_insert(pre, ins) == code) {
      *ok = true;
      *out_gap = gap;
      return pre;
    }
  } catch (const StructureError&) {
  }
  return code;
}

// ---- move VI ----

VsgCode apply_vi_insert(const VsgCode& code, const std::string& vertex, int kpos, bool earlier_over,
                        const std::vector<std::string>& requested = {}) {
  auto itr = code.rotations.find(vertex);
  if (itr == code.rotations.end()) throw StructureError("unknown vertex " + vertex);
  int d = static_cast<int>(itr->second.size());
  if (d < 2) throw StructureError("move VI needs vertex degree >= 2");
  if (kpos < 0 || kpos >= d) throw StructureError("bad leg position");
  int k2 = (kpos + 1) % d;
  HalfEdge a = itr->second[kpos], b = itr->second[k2];

  std::string label = fresh_labels(code, 1, requested)[0];
  int sign = (earlier_over ? 1 : -1) * orient(a) * orient(b);
  VsgCode out = code;
  Passage pa{label, earlier_over ? Role::Over : Role::Under, sign};
  Passage pb{label, earlier_over ? Role::Under : Role::Over, sign};
  auto put = [&](const HalfEdge& h, const Passage& p) {
    auto& seq = out.passages[h.edge];
    if (h.end == End::Tail)
      seq.insert(seq.begin(), p);
    else
      seq.push_back(p);
  };
  put(a, pa);
  put(b, pb);
  std::swap(out.rotations[vertex][kpos], out.rotations[vertex][k2]);
  return out;
}

VsgCode apply_vi_delete(const VsgCode& code, const std::string& vertex, int kpos, bool* ok,
                        bool* earlier_over, std::string* removed = nullptr) {
  *ok = false;
  auto itr = code.rotations.find(vertex);
  if (itr == code.rotations.end()) return code;
  int d = static_cast<int>(itr->second.size());
  if (d < 2 || kpos < 0 || kpos >= d) return code;
  int k2 = (kpos + 1) % d;
  HalfEdge a = itr->second[kpos], b = itr->second[k2];

  bool same_edge = a.edge == b.edge;
  auto end_loc = [&](const HalfEdge& h) -> std::optional<Loc> {
    auto it = code.passages.find(h.edge);
    if (it == code.passages.end() || it->second.empty()) return std::nullopt;
    int len = static_cast<int>(it->second.size());
    if (same_edge && len < 2) return std::nullopt;
    return Loc{h.edge, h.end == End::Tail ? 0 : len - 1};
  };
  auto la = end_loc(a), lb = end_loc(b);
  if (!la || !lb || *la == *lb) return code;
  if (passage_at(code, *la).crossing != passage_at(code, *lb).crossing) return code;

  std::string label = passage_at(code, *la).crossing;
  VsgCode pre = code;
  delete_locs(pre, {*la, *lb});
  std::swap(pre.rotations[vertex][kpos], pre.rotations[vertex][k2]);
  for (bool eo : {true, false}) {
    try {
      if (apply_vi_insert(pre, vertex, kpos, eo, {label}) == code) {
        *ok = true;
        *earlier_over = eo;
        if (removed) *removed = label;
        return pre;
      }
    } catch (const StructureError&) {
    }
  }
  return code;
}

}  // namespace

// ---- apply ----

VsgCode apply_move(const VsgCode& code, const MoveSite& site, const MoveSet& ms, MoveSite* inverse) {
  if (!ms.allows(site.move))
    throw PolicyError("move " + move_name(site.move) + " is not allowed by the active move set");

  auto set_inverse = [&](const MoveSite& inv) {
    if (inverse) *inverse = inv;
  };

  switch (site.move) {
    case MoveId::I: {
      auto itp = code.passages.find(site.edge);
      if (itp == code.passages.end()) throw StructureError("unknown edge " + site.edge);
      if (site.dir == "insert") {
        if (site.pos < 0 || site.pos > static_cast<int>(itp->second.size()))
          throw StructureError("gap out of range");
        VsgCode out = code;
        std::string label = fresh_labels(code, 1, site.labels)[0];
        auto& seq = out.passages[site.edge];
        Passage first{label, site.role, site.sign};
        Passage second{label, opposite(site.role), site.sign};
        seq.insert(seq.begin() + site.pos, {first, second});
        MoveSite inv = site;
        inv.dir = "delete";
        set_inverse(inv);
        return out;
      }
      if (site.dir != "delete") throw StructureError("move I needs dir insert|delete");
      if (site.pos < 0 || site.pos + 1 >= static_cast<int>(itp->second.size()))
        throw StructureError("position out of range");
      const Passage p0 = itp->second[site.pos];
      if (p0.crossing != itp->second[site.pos + 1].crossing)
        throw StructureError("not a kink: labels differ");
      VsgCode out = code;
      auto& seq = out.passages[site.edge];
      seq.erase(seq.begin() + site.pos, seq.begin() + site.pos + 2);
      MoveSite inv = site;
      inv.dir = "insert";
      inv.role = p0.role;
      inv.sign = p0.sign;
      inv.labels = {p0.crossing};
      set_inverse(inv);
      return out;
    }

    case MoveId::II: {
      if (site.dir == "insert") {
        auto check_gap = [&](const std::string& e, int g) {
          auto it = code.passages.find(e);
          if (it == code.passages.end()) throw StructureError("unknown edge " + e);
          if (g < 0 || g > static_cast<int>(it->second.size()))
            throw StructureError("gap out of range");
        };
        check_gap(site.edge, site.pos);
        check_gap(site.edge2, site.pos2);
        auto labels = fresh_labels(code, 2, site.labels);
        VsgCode out = code;
        std::vector<Passage> overs = {{labels[0], Role::Over, site.sign},
                                      {labels[1], Role::Over, -site.sign}};
        std::vector<Passage> unders = {{labels[0], Role::Under, site.sign},
                                       {labels[1], Role::Under, -site.sign}};
        if (site.flag) std::swap(unders[0], unders[1]);
        int opos = site.pos, upos = site.pos2;
        if (site.edge == site.edge2 && site.pos == site.pos2) {
          // both pairs into one gap; start selects which pair sits first
          auto& seq = out.passages[site.edge];
          if (site.start == 1) {
            seq.insert(seq.begin() + site.pos, overs.begin(), overs.end());
            seq.insert(seq.begin() + site.pos, unders.begin(), unders.end());
            opos += 2;
          } else {
            seq.insert(seq.begin() + site.pos, unders.begin(), unders.end());
            seq.insert(seq.begin() + site.pos, overs.begin(), overs.end());
            upos += 2;
          }
        } else if (site.edge == site.edge2 && site.pos2 > site.pos) {
          auto& seq = out.passages[site.edge];
          seq.insert(seq.begin() + site.pos2, unders.begin(), unders.end());
          seq.insert(seq.begin() + site.pos, overs.begin(), overs.end());
          upos += 2;
        } else if (site.edge == site.edge2) {
          auto& seq = out.passages[site.edge];
          seq.insert(seq.begin() + site.pos, overs.begin(), overs.end());
          seq.insert(seq.begin() + site.pos2, unders.begin(), unders.end());
          opos += 2;
        } else {
          auto& so = out.passages[site.edge];
          so.insert(so.begin() + site.pos, overs.begin(), overs.end());
          auto& su = out.passages[site.edge2];
          su.insert(su.begin() + site.pos2, unders.begin(), unders.end());
        }
        MoveSite inv = site;
        inv.dir = "delete";
        inv.pos = opos;
        inv.pos2 = upos;
        set_inverse(inv);
        return out;
      }
      if (site.dir != "delete") throw StructureError("move II needs dir insert|delete");
      auto get2 = [&](const std::string& e, int p) {
        auto it = code.passages.find(e);
        if (it == code.passages.end() || p < 0 || p + 1 >= static_cast<int>(it->second.size()))
          throw StructureError("move II pair out of range");
        return std::array<Passage, 2>{it->second[p], it->second[p + 1]};
      };
      auto ov = get2(site.edge, site.pos);
      auto un = get2(site.edge2, site.pos2);
      if (site.edge == site.edge2 && std::abs(site.pos - site.pos2) < 2)
        throw StructureError("move II pairs overlap");
      if (ov[0].role != Role::Over || ov[1].role != Role::Over || un[0].role != Role::Under ||
          un[1].role != Role::Under)
        throw StructureError("move II roles do not match");
      if (ov[0].crossing == ov[1].crossing) throw StructureError("move II labels equal");
      bool parallel = un[0].crossing == ov[0].crossing && un[1].crossing == ov[1].crossing;
      bool reversed = un[0].crossing == ov[1].crossing && un[1].crossing == ov[0].crossing;
      if (!parallel && !reversed) throw StructureError("move II labels do not match");
      if (ov[0].sign != -ov[1].sign) throw StructureError("move II signs must be opposite");
      VsgCode out = code;
      delete_locs(out, {{site.edge, site.pos},
                        {site.edge, site.pos + 1},
                        {site.edge2, site.pos2},
                        {site.edge2, site.pos2 + 1}});
      MoveSite inv = site;
      inv.dir = "insert";
      inv.flag = reversed;
      inv.sign = ov[0].sign;
      inv.labels = {ov[0].crossing, ov[1].crossing};
      if (site.edge == site.edge2 && site.pos2 > site.pos) inv.pos2 -= 2;
      if (site.edge == site.edge2 && site.pos > site.pos2) inv.pos -= 2;
      inv.start = (site.edge == site.edge2 && inv.pos == inv.pos2 && site.pos > site.pos2) ? 1 : 0;
      set_inverse(inv);
      return out;
    }

    case MoveId::III: {
      if (site.pairs.size() != 3) throw StructureError("move III needs three pairs");
      std::vector<std::array<Passage, 2>> prs;
      std::vector<Loc> locs;
      for (auto& [e, p] : site.pairs) {
        auto it = code.passages.find(e);
        if (it == code.passages.end() || p < 0 || p + 1 >= static_cast<int>(it->second.size()))
          throw StructureError("move III pair out of range");
        prs.push_back({it->second[p], it->second[p + 1]});
        locs.push_back({e, p});
        locs.push_back({e, p + 1});
      }
      std::sort(locs.begin(), locs.end());
      if (std::adjacent_find(locs.begin(), locs.end()) != locs.end())
        throw StructureError("move III pairs overlap");
      if (!triangle_fragment_valid(prs)) throw StructureError("not a realizable triangle");
      VsgCode out = code;
      for (auto& [e, p] : site.pairs) {
        auto& seq = out.passages[e];
        std::swap(seq[p], seq[p + 1]);
      }
      set_inverse(site);
      return out;
    }

    case MoveId::IV: {
      IvParams prm{site.vertex, site.edge, site.pos, site.role, site.start, site.rot_dir,
                   site.labels};
      if (site.dir == "insert") {
        VsgCode out = apply_iv_insert(code, prm);
        MoveSite inv = site;
        inv.dir = "delete";
        inv.pos = site.pos + (code.edge(site.edge).tail == site.vertex ? 1 : 0);
        set_inverse(inv);
        return out;
      }
      if (site.dir != "delete") throw StructureError("move IV needs dir insert|delete");
      bool ok = false;
      int gap = 0;
      VsgCode out = apply_iv_delete(code, prm, &ok, &gap);
      if (!ok) throw StructureError("move IV site not applicable");
      MoveSite inv = site;
      inv.dir = "insert";
      inv.pos = gap;
      inv.labels.clear();
      {
        auto& seq = code.passages.at(site.edge);
        int d = code.degree(site.vertex);
        for (int i = 0; i < d; ++i) inv.labels.push_back(seq[site.pos + i].crossing);
      }
      set_inverse(inv);
      return out;
    }

    case MoveId::V: {
      if (site.twist != 1 && site.twist != -1) throw StructureError("bad twist direction");
      if (site.dir == "insert") {
        VsgCode out = apply_v_insert(code, site.vertex, site.twist, site.labels);
        MoveSite inv = site;
        inv.dir = "delete";
        set_inverse(inv);
        return out;
      }
      if (site.dir != "delete") throw StructureError("move V needs dir insert|delete");
      bool ok = false;
      std::vector<std::string> removed;
      VsgCode out = apply_v_delete(code, site.vertex, site.twist, &ok, &removed);
      if (!ok) throw StructureError("move V site not applicable");
      MoveSite inv = site;
      inv.dir = "insert";
      inv.labels = removed;
      set_inverse(inv);
      return out;
    }

    case MoveId::VI: {
      if (site.dir == "insert") {
        VsgCode out = apply_vi_insert(code, site.vertex, site.k, site.flag, site.labels);
        MoveSite inv = site;
        inv.dir = "delete";
        set_inverse(inv);
        return out;
      }
      if (site.dir != "delete") throw StructureError("move VI needs dir insert|delete");
      bool ok = false, eo = false;
      std::string removed;
      VsgCode out = apply_vi_delete(code, site.vertex, site.k, &ok, &eo, &removed);
      if (!ok) throw StructureError("move VI site not applicable");
      MoveSite inv = site;
      inv.dir = "insert";
      inv.flag = eo;
      inv.labels = {removed};
      set_inverse(inv);
      return out;
    }

    case MoveId::VIstar: {
      auto it = code.rotations.find(site.vertex);
      if (it == code.rotations.end()) throw StructureError("unknown vertex " + site.vertex);
      VsgCode out = code;
      auto& r = out.rotations[site.vertex];
      std::reverse(r.begin(), r.end());
      set_inverse(site);
      return out;
    }

    case MoveId::VIIstar: {
      auto it = code.rotations.find(site.vertex);
      if (it == code.rotations.end()) throw StructureError("unknown vertex " + site.vertex);
      int d = static_cast<int>(it->second.size());
      if (d < 2 || site.k < 0 || site.k >= d) throw StructureError("bad leg position");
      VsgCode out = code;
      std::swap(out.rotations[site.vertex][site.k], out.rotations[site.vertex][(site.k + 1) % d]);
      set_inverse(site);
      return out;
    }

    case MoveId::VIIIstar: {
      auto it = code.passages.find(site.edge);
      if (it == code.passages.end()) throw StructureError("unknown edge " + site.edge);
      if (site.pos < 0 || site.pos + 1 >= static_cast<int>(it->second.size()))
        throw StructureError("position out of range");
      if (it->second[site.pos].crossing == it->second[site.pos + 1].crossing)
        throw StructureError("move VIII* needs two distinct crossings");
      VsgCode out = code;
      auto& seq = out.passages[site.edge];
      std::swap(seq[site.pos], seq[site.pos + 1]);
      set_inverse(site);
      return out;
    }
  }
  throw StructureError("unhandled move");
}

// ---- enumerate ----

std::vector<MoveSite> enumerate_moves(const VsgCode& code, const MoveSet& ms, bool with_insertions) {
  std::vector<MoveSite> out;

  struct AdjPair {
    std::string edge;
    int pos;
    Passage a, b;
  };
  std::vector<AdjPair> adj;
  for (auto& e : code.edges) {
    auto& seq = code.passages.at(e.id);
    for (int i = 0; i + 1 < static_cast<int>(seq.size()); ++i)
      adj.push_back({e.id, i, seq[i], seq[i + 1]});
  }

  for (auto& p : adj)
    if (p.a.crossing == p.b.crossing) {
      MoveSite s;
      s.move = MoveId::I;
      s.dir = "delete";
      s.edge = p.edge;
      s.pos = p.pos;
      s.role = p.a.role;
      s.sign = p.a.sign;
      out.push_back(s);
    }

  for (auto& po : adj) {
    if (po.a.role != Role::Over || po.b.role != Role::Over) continue;
    if (po.a.crossing == po.b.crossing || po.a.sign != -po.b.sign) continue;
    for (auto& pu : adj) {
      if (pu.a.role != Role::Under || pu.b.role != Role::Under) continue;
      bool parallel = pu.a.crossing == po.a.crossing && pu.b.crossing == po.b.crossing;
      bool reversed = pu.a.crossing == po.b.crossing && pu.b.crossing == po.a.crossing;
      if (!parallel && !reversed) continue;
      if (po.edge == pu.edge && std::abs(po.pos - pu.pos) < 2) continue;
      MoveSite s;
      s.move = MoveId::II;
      s.dir = "delete";
      s.edge = po.edge;
      s.pos = po.pos;
      s.edge2 = pu.edge;
      s.pos2 = pu.pos;
      s.flag = reversed;
      s.sign = po.a.sign;
      out.push_back(s);
    }
  }

  for (size_t i = 0; i < adj.size(); ++i)
    for (size_t j = i + 1; j < adj.size(); ++j)
      for (size_t k = j + 1; k < adj.size(); ++k) {
        const AdjPair* pr[3] = {&adj[i], &adj[j], &adj[k]};
        std::map<std::string, int> cnt;
        for (auto* p : pr) {
          cnt[p->a.crossing]++;
          cnt[p->b.crossing]++;
        }
        if (cnt.size() != 3) continue;
        bool all2 = true;
        for (auto& [l, c] : cnt) all2 &= c == 2;
        if (!all2) continue;
        std::vector<Loc> locs;
        for (auto* p : pr) {
          locs.push_back({p->edge, p->pos});
          locs.push_back({p->edge, p->pos + 1});
        }
        std::sort(locs.begin(), locs.end());
        if (std::adjacent_find(locs.begin(), locs.end()) != locs.end()) continue;
        std::vector<std::array<Passage, 2>> frag;
        for (auto* p : pr) frag.push_back({p->a, p->b});
        if (!triangle_fragment_valid(frag)) continue;
        MoveSite s;
        s.move = MoveId::III;
        s.dir = "apply";
        for (auto* p : pr) s.pairs.push_back({p->edge, p->pos});
        out.push_back(s);
      }

  for (auto& v : code.vertices) {
    int d = code.degree(v);
    if (d < 1) continue;
    for (auto& e : code.edges) {
      auto& seq = code.passages.at(e.id);
      for (int p = 0; p + d <= static_cast<int>(seq.size()); ++p)
        for (Role rho : {Role::Over, Role::Under})
          for (int dir : {1, -1})
            for (int k = 0; k < d; ++k) {
              IvParams prm{v, e.id, p, rho, k, dir, {}};
              bool ok = false;
              int gap = 0;
              apply_iv_delete(code, prm, &ok, &gap);
              if (!ok) continue;
              MoveSite s;
              s.move = MoveId::IV;
              s.dir = "delete";
              s.vertex = v;
              s.edge = e.id;
              s.pos = p;
              s.role = rho;
              s.start = k;
              s.rot_dir = dir;
              out.push_back(s);
            }
    }
  }

  for (auto& v : code.vertices)
    for (int tw : {1, -1}) {
      bool ok = false;
      apply_v_delete(code, v, tw, &ok);
      if (ok) {
        MoveSite s;
        s.move = MoveId::V;
        s.dir = "delete";
        s.vertex = v;
        s.twist = tw;
        out.push_back(s);
      }
    }

  if (ms.pliable)
    for (auto& v : code.vertices) {
      int d = code.degree(v);
      if (d < 2) continue;
      for (int k = 0; k < d; ++k) {
        bool ok = false, eo = false;
        apply_vi_delete(code, v, k, &ok, &eo);
        if (ok) {
          MoveSite s;
          s.move = MoveId::VI;
          s.dir = "delete";
          s.vertex = v;
          s.k = k;
          s.flag = eo;
          out.push_back(s);
        }
      }
    }

  if (ms.allows(MoveId::VIstar))
    for (auto& v : code.vertices)
      if (code.degree(v) >= 2) {
        MoveSite s;
        s.move = MoveId::VIstar;
        s.vertex = v;
        out.push_back(s);
      }
  if (ms.allows(MoveId::VIIstar))
    for (auto& v : code.vertices) {
      int d = code.degree(v);
      if (d < 2) continue;
      for (int k = 0; k < d; ++k) {
        MoveSite s;
        s.move = MoveId::VIIstar;
        s.vertex = v;
        s.k = k;
        out.push_back(s);
      }
    }
  if (ms.allows(MoveId::VIIIstar))
    for (auto& p : adj)
      if (p.a.crossing != p.b.crossing) {
        MoveSite s;
        s.move = MoveId::VIIIstar;
        s.edge = p.edge;
        s.pos = p.pos;
        out.push_back(s);
      }

  if (!with_insertions) return out;

  for (auto& e : code.edges) {
    int len = static_cast<int>(code.passages.at(e.id).size());
    for (int g = 0; g <= len; ++g)
      for (Role r : {Role::Over, Role::Under})
        for (int sg : {1, -1}) {
          MoveSite s;
          s.move = MoveId::I;
          s.dir = "insert";
          s.edge = e.id;
          s.pos = g;
          s.role = r;
          s.sign = sg;
          out.push_back(s);
        }
  }

  std::vector<std::pair<std::string, int>> gaps;
  for (auto& e : code.edges) {
    int len = static_cast<int>(code.passages.at(e.id).size());
    for (int g = 0; g <= len; ++g) gaps.push_back({e.id, g});
  }
  for (auto& go : gaps)
    for (auto& gu : gaps) {
      if (go == gu) continue;
      for (bool rev : {false, true})
        for (int sg : {1, -1}) {
          MoveSite s;
          s.move = MoveId::II;
          s.dir = "insert";
          s.edge = go.first;
          s.pos = go.second;
          s.edge2 = gu.first;
          s.pos2 = gu.second;
          s.flag = rev;
          s.sign = sg;
          out.push_back(s);
        }
    }

  for (auto& v : code.vertices) {
    int d = code.degree(v);
    if (d < 1) continue;
    for (auto& [e, g] : gaps)
      for (Role rho : {Role::Over, Role::Under})
        for (int dir : {1, -1})
          for (int k = 0; k < d; ++k) {
            MoveSite s;
            s.move = MoveId::IV;
            s.dir = "insert";
            s.vertex = v;
            s.edge = e;
            s.pos = g;
            s.role = rho;
            s.start = k;
            s.rot_dir = dir;
            out.push_back(s);
          }
  }

  for (auto& v : code.vertices)
    if (code.degree(v) >= 2)
      for (int tw : {1, -1}) {
        MoveSite s;
        s.move = MoveId::V;
        s.dir = "insert";
        s.vertex = v;
        s.twist = tw;
        out.push_back(s);
      }

  if (ms.pliable)
    for (auto& v : code.vertices) {
      int d = code.degree(v);
      if (d < 2) continue;
      for (int k = 0; k < d; ++k)
        for (bool eo : {true, false}) {
          MoveSite s;
          s.move = MoveId::VI;
          s.dir = "insert";
          s.vertex = v;
          s.k = k;
          s.flag = eo;
          out.push_back(s);
        }
    }

  return out;
}

// ---- normalization under the forbidden moves ----

namespace {

struct ArrowInfo {
  std::string label;
  Loc under{"", -1}, over{"", -1};
  int sign = 1;
};

std::vector<ArrowInfo> arrows_of(const VsgCode& c) {
  std::map<std::string, ArrowInfo> by_label;
  for (auto& e : c.edges) {
    auto& seq = c.passages.at(e.id);
    for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
      auto& a = by_label[seq[i].crossing];
      a.label = seq[i].crossing;
      a.sign = seq[i].sign;
      (seq[i].role == Role::Under ? a.under : a.over) = {e.id, i};
    }
  }
  std::vector<ArrowInfo> out;
  for (auto& e : c.edges) {
    auto& seq = c.passages.at(e.id);
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
      if (seq[i].role == Role::Under) out.push_back(by_label[seq[i].crossing]);
  }
  return out;
}

}  // namespace

VsgCode normalize_forbidden(const VsgCode& code, NormalizeLevel level) {
  require_valid(code);
  VsgCode cur = code;

  // (VIII*) endpoint slides, then (i)/(I) erasures and (ii)/(II) cancellations
  for (;;) {
    auto arrows = arrows_of(cur);
    bool changed = false;
    for (auto& a : arrows)
      if (a.under.edge == a.over.edge) {
        delete_locs(cur, {a.under, a.over});
        changed = true;
        break;
      }
    if (changed) continue;
    for (size_t i = 0; i < arrows.size() && !changed; ++i)
      for (size_t j = i + 1; j < arrows.size() && !changed; ++j) {
        auto &x = arrows[i], &y = arrows[j];
        if (x.under.edge == y.under.edge && x.over.edge == y.over.edge && x.sign == -y.sign) {
          delete_locs(cur, {x.under, x.over, y.under, y.over});
          changed = true;
        }
      }
    if (!changed) break;
  }

  if (level == NormalizeLevel::PliableAll) {
    auto adjacent = [&](const std::string& e1, const std::string& e2) {
      const EdgeRec &a = cur.edge(e1), &b = cur.edge(e2);
      return a.tail == b.tail || a.tail == b.head || a.head == b.tail || a.head == b.head;
    };
    for (;;) {
      bool changed = false;
      for (auto& a : arrows_of(cur))
        if (adjacent(a.under.edge, a.over.edge)) {
          delete_locs(cur, {a.under, a.over});
          changed = true;
          break;
        }
      if (!changed) break;
    }
    for (auto& [v, rot] : cur.rotations) std::sort(rot.begin(), rot.end());
  }

  // group every surviving A_{i,j} consecutively and in the same label order
  // on both edges (all reorderings are (VIII*) compositions)
  std::map<std::string, std::pair<std::string, std::string>> family;
  for (auto& a : arrows_of(cur)) family[a.label] = {a.under.edge, a.over.edge};
  for (auto& [eid, seq] : cur.passages)
    std::stable_sort(seq.begin(), seq.end(), [&](const Passage& p, const Passage& q) {
      auto fp = family.at(p.crossing), fq = family.at(q.crossing);
      if (fp != fq) return fp < fq;
      return p.crossing < q.crossing;
    });

  auto as = arrow_sets(cur);
  for (auto& [key, arr] : as) {
    if (key.first == key.second && !arr.empty())
      throw StructureError("normalize_forbidden: A_ii not empty");
    for (auto& ar : arr)
      if (ar.sign != arr[0].sign) throw StructureError("normalize_forbidden: mixed signs survive");
  }
  require_valid(cur);
  return cur;
}

// ---- search ----

SearchVerdict search_equivalent(const VsgCode& a, const VsgCode& b, const SearchBudget& budget,
                                const MoveSet& ms) {
  require_valid(a);
  require_valid(b);
  if (budget.max_crossings < std::max(a.crossing_count(), b.crossing_count()) ||
      budget.max_states < 2)
    throw BudgetError("search budget below the size of the inputs");

  auto key_of = [](const VsgCode& c) { return canonical_serialize(canonical_form(c)); };

  struct Node {
    VsgCode code;
    std::string parent;
    MoveSite via;   // applied at parent to reach this node
    MoveSite back;  // applied here to return to parent
  };
  std::map<std::string, Node> side[2];
  std::vector<std::string> frontier[2];

  std::string ka = key_of(a), kb = key_of(b);
  SearchVerdict verdict;
  verdict.max_crossings_reached = std::max(a.crossing_count(), b.crossing_count());
  side[0][ka] = {a, "", {}, {}};
  side[1][kb] = {b, "", {}, {}};
  frontier[0] = {ka};
  frontier[1] = {kb};
  verdict.states_visited = 2;

  auto build_witness = [&](const std::string& meet) {
    std::vector<MoveSite> path;
    for (std::string k = meet; !side[0].at(k).parent.empty(); k = side[0].at(k).parent)
      path.push_back(side[0].at(k).via);
    std::reverse(path.begin(), path.end());
    for (std::string k = meet; !side[1].at(k).parent.empty(); k = side[1].at(k).parent)
      path.push_back(side[1].at(k).back);
    return path;
  };

  if (ka == kb) {
    verdict.equivalent = true;
    return verdict;
  }

  while (!frontier[0].empty() && !frontier[1].empty()) {
    int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<std::string> next;
    std::sort(frontier[s].begin(), frontier[s].end());
    for (auto& key : frontier[s]) {
      const VsgCode cur = side[s].at(key).code;
      for (auto& site : enumerate_moves(cur, ms, true)) {
        VsgCode out;
        MoveSite back;
        try {
          out = apply_move(cur, site, ms, &back);
        } catch (const StructureError&) {
          continue;
        }
        if (out.crossing_count() > budget.max_crossings) continue;
        verdict.max_crossings_reached =
            std::max(verdict.max_crossings_reached, out.crossing_count());
        std::string k = key_of(out);
        if (side[s].count(k)) continue;
        side[s][k] = {out, key, site, back};
        next.push_back(k);
        ++verdict.states_visited;
        if (side[1 - s].count(k)) {
          verdict.equivalent = true;
          verdict.witness = build_witness(k);
          return verdict;
        }
        if (verdict.states_visited >= budget.max_states) return verdict;  // exhausted
      }
    }
    frontier[s] = std::move(next);
  }
  return verdict;
}

std::string witness_to_json(const std::vector<MoveSite>& witness) {
  json arr = json::array();
  for (auto& s : witness) arr.push_back(json::parse(s.to_json()));
  return arr.dump();
}

std::vector<MoveSite> witness_from_json(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad witness JSON: ") + e.what());
  }
  std::vector<MoveSite> out;
  for (auto& s : arr) out.push_back(MoveSite::from_json(s.dump()));
  return out;
}

}  // namespace vsg
