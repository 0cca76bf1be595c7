#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "vsg/moves.hpp"
#include "vsg/quandle.hpp"

using namespace vsg;

namespace {

// shift automorphism x -> x+2 on the dihedral quandle mod 4 (an involution)
FiniteVQS dihedral4_shift() {
  FiniteVQS s = FiniteVQS::dihedral(4);
  s.f = {2, 3, 0, 1};
  return s;
}

// Independent oracle for f = id structures: code-level arcs (under-passages
// and vertices only; virtual crossings are transparent when f is trivial),
// exhaustive enumeration with no propagation.
long long brute_colorings_f_id(const VsgCode& code, const FiniteVQS& s) {
  struct ArcId {
    std::string edge;
    int seg;
    bool operator<(const ArcId& o) const { return edge != o.edge ? edge < o.edge : seg < o.seg; }
  };
  std::map<ArcId, int> ids;
  auto id_of = [&](const std::string& e, int seg) {
    auto [it, fresh] = ids.emplace(ArcId{e, seg}, static_cast<int>(ids.size()));
    return it->second;
  };
  std::map<std::string, std::vector<int>> seg_at;
  std::map<std::string, int> nsegs;
  for (auto& e : code.edges) {
    int seg = 0;
    for (auto& p : code.passages.at(e.id)) {
      seg_at[e.id].push_back(seg);
      if (p.role == Role::Under) ++seg;
    }
    nsegs[e.id] = seg + 1;
    for (int i = 0; i <= seg; ++i) id_of(e.id, i);
  }
  int n = static_cast<int>(ids.size());
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= s.size();

  std::map<std::string, std::pair<std::string, int>> over_pos, under_pos;
  for (auto& e : code.edges) {
    auto& seq = code.passages.at(e.id);
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
      (seq[i].role == Role::Over ? over_pos : under_pos)[seq[i].crossing] = {e.id, i};
  }

  long long count = 0;
  std::vector<int> val(n);
  for (long long a = 0; a < total; ++a) {
    long long x = a;
    for (int i = 0; i < n; ++i) {
      val[i] = static_cast<int>(x % s.size());
      x /= s.size();
    }
    bool ok = true;
    for (auto& [label, up] : under_pos) {
      auto ov = over_pos.at(label);
      int sgn = 0;
      for (auto& p : code.passages.at(up.first))
        if (p.crossing == label && p.role == Role::Under) sgn = p.sign;
      int in = val[id_of(up.first, seg_at[up.first][up.second])];
      int out = val[id_of(up.first, seg_at[up.first][up.second] + 1)];
      int w = val[id_of(ov.first, seg_at[ov.first][ov.second])];
      if (sgn < 0) w = s.bar[w];
      if (out != s.op[in][w]) {
        ok = false;
        break;
      }
    }
    if (ok)
      for (auto& v : code.vertices) {
        int shared = -1;
        for (auto& h : code.rotations.at(v)) {
          int arc = h.end == End::Head ? val[id_of(h.edge, nsegs[h.edge] - 1)]
                                       : s.bar[val[id_of(h.edge, 0)]];
          if (shared < 0)
            shared = arc;
          else if (shared != arc) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("gcd_valence: theta 3, loop vertex 2, mixed degrees 2") {
  CHECK(gcd_valence(fixtures::theta_planar()) == 3);
  CHECK(gcd_valence(fixtures::unknot0()) == 2);
  VsgCode c;
  c.vertices = {"a", "b"};
  c.edges = {{"e1", "a", "a"}, {"e2", "a", "b"}, {"e3", "a", "b"},
             {"e4", "b", "b"}, {"e5", "b", "b"}};
  for (auto& e : c.edges) {
    c.passages[e.id] = {};
    c.rotations[e.tail].push_back({e.id, End::Tail});
    c.rotations[e.head].push_back({e.id, End::Head});
  }
  REQUIRE(validate(c).ok);
  CHECK(c.degree("a") == 4);
  CHECK(c.degree("b") == 6);
  CHECK(gcd_valence(c) == 2);
  VsgCode none;
  CHECK_THROWS_AS(gcd_valence(none), ValidationError);
}

TEST_CASE("validate_vqs accepts the one-element structure for any d") {
  FiniteVQS t = FiniteVQS::trivial();
  for (int d : {1, 2, 3, 7}) CHECK(validate_vqs(t, d).ok);
}

TEST_CASE("validate_vqs: dihedral3 with d=2 passes, 3-cycle f fails f-order") {
  FiniteVQS d3 = FiniteVQS::dihedral(3);
  CHECK(validate_vqs(d3, 2).ok);
  FiniteVQS bad = d3;
  bad.f = {1, 2, 0};
  auto rep = validate_vqs(bad, 2);
  REQUIRE_FALSE(rep.ok);
  bool found = false;
  for (auto& v : rep.violations) found |= v.rule == "f-order-divides-d";
  CHECK(found);
}

TEST_CASE("validate_vqs accepts the shipped four-element structure") {
  CHECK(validate_vqs(dihedral4_shift(), 2).ok);
}

TEST_CASE("crossing-free unknot has 3 dihedral3 colorings") {
  CHECK(count_colorings(fixtures::unknot0(), FiniteVQS::dihedral(3)) == 3);
}

TEST_CASE("every code has exactly one trivial-structure coloring") {
  std::mt19937 rng(71);
  for (int i = 0; i < 10; ++i) {
    VsgCode c = fixtures::random_code(rng, 2, 3, 3);
    CHECK(count_colorings(c, FiniteVQS::trivial()) == 1);
  }
}

TEST_CASE("dihedral3 separates the classical from the virtual trefoil") {
  FiniteVQS d3 = FiniteVQS::dihedral(3);
  long long classical = count_colorings(fixtures::classical_trefoil(), d3);
  long long virt = count_colorings(fixtures::virtual_trefoil(), d3);
  CHECK(classical == 9);
  CHECK(virt == 3);
  // confirmed by the all-assignments oracle
  CHECK(classical == brute_colorings_f_id(fixtures::classical_trefoil(), d3));
  CHECK(virt == brute_colorings_f_id(fixtures::virtual_trefoil(), d3));
}

TEST_CASE("coloring counts agree with the brute-force oracle on random codes") {
  std::mt19937 rng(72);
  FiniteVQS d3 = FiniteVQS::dihedral(3);
  for (int i = 0; i < 12; ++i) {
    VsgCode c = fixtures::random_code(rng, 2, 2, 3);
    int arcs = 0;
    for (auto& [e, seq] : c.passages)
      for (auto& p : seq) arcs += p.role == Role::Under;
    arcs += static_cast<int>(c.edges.size());
    if (arcs > 7) continue;  // keep the 3^arcs oracle affordable
    if (!validate_vqs(d3, gcd_valence(c)).ok) continue;  // precondition
    CHECK(count_colorings(c, d3) == brute_colorings_f_id(c, d3));
  }
}

TEST_CASE("counts are independent of the realization, including f-active structures") {
  std::mt19937 rng(73);
  std::vector<FiniteVQS> structures = {FiniteVQS::dihedral(3), dihedral4_shift()};
  for (int i = 0; i < 6; ++i) {
    VsgCode c = fixtures::random_code(rng, 2, 3, 3);
    for (auto& s : structures) {
      if (!validate_vqs(s, gcd_valence(c)).ok) continue;
      ColoringOptions opts;
      long long base = count_colorings(c, s, opts);
      for (unsigned variant = 1; variant < 10; ++variant) {
        opts.variant = variant;
        CHECK(count_colorings(c, s, opts) == base);
      }
    }
  }
}

TEST_CASE("counts are invariant under random (I)-(VI) move sequences") {
  std::mt19937 rng(74);
  MoveSet ms = MoveSet::pliable_moves();
  std::vector<FiniteVQS> structures = {FiniteVQS::dihedral(3), dihedral4_shift()};
  for (int i = 0; i < 10; ++i) {
    VsgCode c = fixtures::random_code(rng, 2, 3, 3);
    for (auto& s : structures) {
      if (!validate_vqs(s, gcd_valence(c)).ok) continue;
      ColoringOptions opts;
      opts.max_arcs = 200;
      long long base = count_colorings(c, s, opts);
      VsgCode cur = c;
      for (int hop = 0; hop < 5; ++hop) {
        auto sites = enumerate_moves(cur, ms, true);
        std::shuffle(sites.begin(), sites.end(), rng);
        for (auto& site : sites) {
          try {
            VsgCode out = apply_move(cur, site, ms);
            if (out.crossing_count() > 5) continue;
            cur = out;
            break;
          } catch (const StructureError&) {
          }
        }
      }
      CHECK(count_colorings(cur, s, opts) == base);
    }
  }
}

TEST_CASE("dihedral5 counts colorings of even-valence codes") {
  FiniteVQS d5 = FiniteVQS::dihedral(5);
  CHECK(count_colorings(fixtures::unknot0(), d5) == 5);
  CHECK(count_colorings(fixtures::classical_trefoil(), d5) == 5);  // 5-colorings: constants only
  CHECK(count_colorings(fixtures::virtual_trefoil(), d5) == 5);
}

TEST_CASE("VQS JSON round trip and structural validation") {
  FiniteVQS s = dihedral4_shift();
  FiniteVQS back = FiniteVQS::from_json(s.to_json());
  CHECK(back.op == s.op);
  CHECK(back.f == s.f);
  CHECK(back.d == s.d);
  CHECK_THROWS_AS(FiniteVQS::from_json("{\"elements\":[\"0\"],\"op\":[[0,0]],\"bar\":[0],\"f\":[0],\"d\":1}"),
                  StructureError);
}

TEST_CASE("count_colorings enforces the structure/d precondition") {
  // 3-cycle f fails f^d = id for the unknot's d = 2
  FiniteVQS bad = FiniteVQS::dihedral(3);
  bad.f = {1, 2, 0};
  CHECK_THROWS_AS(count_colorings(fixtures::unknot0(), bad), ValidationError);
}
