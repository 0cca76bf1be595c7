#include "vsg/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace vsg {

using nlohmann::json;

namespace {

void free_reduce(std::vector<int>& w) {
  std::vector<int> out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  w = std::move(out);
}

void cyclic_reduce(std::vector<int>& w) {
  free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
    free_reduce(w);
  }
}

std::string gen_name(int index) {
  // a..z, then g27, g28, ...
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "g" + std::to_string(index + 1);
}

}  // namespace

std::string GroupPresentation::to_text() const {
  std::string out = "gens: ";
  for (size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ",";
    out += generators[i];
  }
  out += "\n";
  for (auto& r : relators) {
    out += "rels:";
    for (int x : r) {
      std::string n = generators[std::abs(x) - 1];
      if (x < 0 && !n.empty()) n[0] = static_cast<char>(toupper(n[0]));
      out += " " + n;
    }
    out += "\n";
  }
  return out;
}

GroupPresentation wirtinger(const VsgCode& code) {
  require_valid(code);

  // arcs: split every edge at its under-passages; over-passages are invisible
  struct ArcRef {
    std::string edge;
    int seg;
    bool operator<(const ArcRef& o) const {
      return edge != o.edge ? edge < o.edge : seg < o.seg;
    }
  };
  std::map<ArcRef, int> arc_gen;  // 1-based generator index
  int next = 1;
  auto gen_of = [&](const std::string& edge, int seg) {
    ArcRef r{edge, seg};
    auto it = arc_gen.find(r);
    if (it != arc_gen.end()) return it->second;
    arc_gen[r] = next;
    return next++;
  };

  // arc segment containing each passage position; segment index increments
  // after every under-passage
  std::map<std::string, std::vector<int>> seg_at;  // edge -> per-passage segment
  std::map<std::string, int> seg_count;
  for (auto& e : code.edges) {
    int seg = 0;
    auto& v = seg_at[e.id];
    for (auto& p : code.passages.at(e.id)) {
      v.push_back(seg);
      if (p.role == Role::Under) ++seg;
    }
    seg_count[e.id] = seg + 1;
    gen_of(e.id, 0);  // materialize generators in edge order
    for (int sgi = 1; sgi <= seg; ++sgi) gen_of(e.id, sgi);
  }

  GroupPresentation pres;

  // crossing relations: out = over^s * in * over^-s
  std::map<std::string, std::pair<std::string, int>> under_pos, over_pos;
  for (auto& e : code.edges) {
    auto& seq = code.passages.at(e.id);
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
      (seq[i].role == Role::Under ? under_pos : over_pos)[seq[i].crossing] = {e.id, i};
  }
  for (auto& [label, up] : under_pos) {
    auto ov = over_pos.at(label);
    int sgn = 0;
    for (auto& p : code.passages.at(up.first))
      if (p.crossing == label && p.role == Role::Under) sgn = p.sign;
    int in_gen = gen_of(up.first, seg_at[up.first][up.second]);
    int out_gen = gen_of(up.first, seg_at[up.first][up.second] + 1);
    int over_gen = gen_of(ov.first, seg_at[ov.first][ov.second]);
    // out = over^-s in over^s; the exponent pairing with the stored sign is
    // forced by invariance under moves (IV) and (VI) at the vertices
    std::vector<int> w = {-out_gen, sgn > 0 ? -over_gen : over_gen, in_gen,
                          sgn > 0 ? over_gen : -over_gen};
    free_reduce(w);
    if (!w.empty()) pres.relators.push_back(w);
  }

  // vertex relations: product in rotation order, +1 leaving, -1 entering
  for (auto& v : code.vertices) {
    std::vector<int> w;
    for (auto& h : code.rotations.at(v)) {
      if (h.end == End::Tail)
        w.push_back(gen_of(h.edge, 0));
      else
        w.push_back(-gen_of(h.edge, seg_count[h.edge] - 1));
    }
    free_reduce(w);
    if (!w.empty()) pres.relators.push_back(w);
  }

  pres.generators.resize(arc_gen.size());
  for (int i = 0; i < static_cast<int>(arc_gen.size()); ++i) pres.generators[i] = gen_name(i);
  return pres;
}

GroupPresentation tietze_simplify(const GroupPresentation& input) {
  int n = static_cast<int>(input.generators.size());
  std::vector<std::vector<int>> rels = input.relators;
  std::vector<bool> alive(n + 1, true);

  auto substitute = [&](std::vector<int>& w, int gen, const std::vector<int>& repl) {
    std::vector<int> out;
    for (int x : w) {
      if (x == gen)
        out.insert(out.end(), repl.begin(), repl.end());
      else if (x == -gen)
        for (auto it = repl.rbegin(); it != repl.rend(); ++it) out.push_back(-*it);
      else
        out.push_back(x);
    }
    free_reduce(out);
    w = std::move(out);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& r : rels) cyclic_reduce(r);
    rels.erase(std::remove_if(rels.begin(), rels.end(),
                              [](const std::vector<int>& r) { return r.empty(); }),
               rels.end());
    std::sort(rels.begin(), rels.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    // find a relator in which some generator appears exactly once
    for (size_t ri = 0; ri < rels.size() && !changed; ++ri) {
      auto& r = rels[ri];
      for (size_t pos = 0; pos < r.size(); ++pos) {
        int g = std::abs(r[pos]);
        int occurrences = 0;
        for (int x : r) occurrences += std::abs(x) == g;
        if (occurrences != 1) continue;
        // solve r = 1 for g: rotate so the g-term is first, then g = inverse
        // of the rest (or the rest itself when the term is g^-1)
        std::vector<int> rest;
        for (size_t t = 1; t < r.size(); ++t) rest.push_back(r[(pos + t) % r.size()]);
        std::vector<int> repl;
        if (r[pos] > 0)
          for (auto it = rest.rbegin(); it != rest.rend(); ++it) repl.push_back(-*it);
        else
          repl = rest;
        std::vector<std::vector<int>> next_rels;
        for (size_t rj = 0; rj < rels.size(); ++rj) {
          if (rj == ri) continue;
          auto w = rels[rj];
          substitute(w, g, repl);
          next_rels.push_back(std::move(w));
        }
        rels = std::move(next_rels);
        alive[g] = false;
        changed = true;
        break;
      }
    }
  }

  // renumber surviving generators densely
  std::vector<int> remap(n + 1, 0);
  GroupPresentation out;
  for (int g = 1; g <= n; ++g)
    if (alive[g]) {
      remap[g] = static_cast<int>(out.generators.size()) + 1;
      out.generators.push_back(gen_name(static_cast<int>(out.generators.size())));
    }
  for (auto& r : rels) {
    std::vector<int> w;
    for (int x : r) w.push_back(x > 0 ? remap[x] : -remap[-x]);
    cyclic_reduce(w);
    if (!w.empty()) out.relators.push_back(w);
  }
  std::sort(out.relators.begin(), out.relators.end());
  out.relators.erase(std::unique(out.relators.begin(), out.relators.end()), out.relators.end());
  return out;
}

Abelianization abelianization(const GroupPresentation& p) {
  int n = static_cast<int>(p.generators.size());
  int m = static_cast<int>(p.relators.size());
  std::vector<std::vector<long long>> a(m, std::vector<long long>(n, 0));
  for (int i = 0; i < m; ++i)
    for (int x : p.relators[i]) a[i][std::abs(x) - 1] += x > 0 ? 1 : -1;

  // Smith normal form over Z
  int rank = 0;
  std::vector<long long> divisors;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c, ++r) {
    for (;;) {
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = r; i < m; ++i)
        for (int j = r; j < n; ++j)
          if (a[i][j] != 0 && (best == 0 || std::abs(a[i][j]) < best)) {
            best = std::abs(a[i][j]);
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        r = m;  // zero block
        break;
      }
      std::swap(a[pi], a[r]);
      for (int i = 0; i < m; ++i) std::swap(a[i][pj], a[i][r]);
      long long piv = a[r][r];
      bool clean = true;
      for (int i = r + 1; i < m; ++i)
        if (a[i][r] != 0) {
          long long q = a[i][r] / piv;
          for (int j = r; j < n; ++j) a[i][j] -= q * a[r][j];
          if (a[i][r] != 0) clean = false;
        }
      for (int j = r + 1; j < n; ++j)
        if (a[r][j] != 0) {
          long long q = a[r][j] / piv;
          for (int i = r; i < m; ++i) a[i][j] -= q * a[i][r];
          if (a[r][j] != 0) clean = false;
        }
      if (clean) break;
    }
    if (r >= m) break;
    if (a[r][r] != 0) {
      divisors.push_back(std::abs(a[r][r]));
      ++rank;
    }
    // local var c is advanced with r; nothing else to do
  }

  // enforce the divisibility chain d1 | d2 | ...
  for (size_t i = 0; i + 1 < divisors.size(); ++i)
    for (size_t j = i + 1; j < divisors.size(); ++j) {
      long long g = std::gcd(divisors[i], divisors[j]);
      long long l = divisors[i] / g * divisors[j];
      divisors[i] = g;
      divisors[j] = l;
    }
  std::sort(divisors.begin(), divisors.end());

  Abelianization out;
  out.free_rank = n - rank;
  for (long long d : divisors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

FiniteGroupTable FiniteGroupTable::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad group JSON: ") + e.what());
  }
  FiniteGroupTable g;
  try {
    for (auto& e : j.at("elements")) g.elements.push_back(e.get<std::string>());
    for (auto& row : j.at("table")) {
      std::vector<int> r;
      for (auto& x : row) r.push_back(x.get<int>());
      g.table.push_back(r);
    }
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad group document: ") + e.what());
  }
  int n = g.size();
  if (static_cast<int>(g.table.size()) != n) throw StructureError("group table is not square");
  for (auto& row : g.table) {
    if (static_cast<int>(row.size()) != n) throw StructureError("group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw StructureError("group table entry out of range");
  }
  // identity, associativity, inverses
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n; ++x) ok &= g.table[e][x] == x && g.table[x][e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw StructureError("group has no identity");
  g.identity = id;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (g.table[g.table[x][y]][z] != g.table[x][g.table[y][z]])
          throw StructureError("group table is not associative");
  for (int x = 0; x < n; ++x) {
    bool has = false;
    for (int y = 0; y < n; ++y) has |= g.table[x][y] == id && g.table[y][x] == id;
    if (!has) throw StructureError("group element lacks an inverse");
  }
  return g;
}

FiniteGroupTable FiniteGroupTable::symmetric3() {
  // permutations of {0,1,2} in lexicographic order
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  FiniteGroupTable g;
  const char* names[] = {"e", "(12)", "(01)", "(012)", "(021)", "(02)"};
  for (int i = 0; i < 6; ++i) g.elements.push_back(names[i]);
  g.table.assign(6, std::vector<int>(6, 0));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> comp;
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      g.table[i][j] =
          static_cast<int>(std::find(perms.begin(), perms.end(), comp) - perms.begin());
    }
  g.identity = 0;
  return g;
}

int FiniteGroupTable::inverse(int a) const {
  for (int b = 0; b < size(); ++b)
    if (table[a][b] == identity) return b;
  throw StructureError("no inverse");
}

long long count_homs(const GroupPresentation& p, const FiniteGroupTable& g,
                     const HomCountOptions& opts) {
  int n = static_cast<int>(p.generators.size());
  int q = g.size();
  double est = 1;
  for (int i = 0; i < n; ++i) est *= q;
  if (est > static_cast<double>(opts.max_assignments))
    throw BudgetError("count_homs: assignment space exceeds the budget");

  // relators sorted by the highest generator they mention, checked as soon
  // as their support is assigned
  std::vector<std::vector<const std::vector<int>*>> by_depth(n + 1);
  for (auto& r : p.relators) {
    int hi = 0;
    for (int x : r) hi = std::max(hi, std::abs(x));
    by_depth[hi].push_back(&r);
  }

  std::vector<int> img(n + 1, 0);
  long long count = 0;
  std::function<void(int)> rec = [&](int depth) {
    if (depth > n) {
      ++count;
      return;
    }
    for (int v = 0; v < q; ++v) {
      img[depth] = v;
      bool ok = true;
      for (auto* r : by_depth[depth]) {
        int acc = g.identity;
        for (int x : *r) {
          int e = x > 0 ? img[x] : g.inverse(img[-x]);
          acc = g.table[acc][e];
        }
        if (acc != g.identity) {
          ok = false;
          break;
        }
      }
      if (ok) rec(depth + 1);
    }
  };
  // relators mentioning no generators at all are identities by free reduction
  rec(1);
  return n == 0 ? 1 : count;
}

}  // namespace vsg
