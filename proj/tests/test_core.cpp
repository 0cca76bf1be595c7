#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "vsg/bigint.hpp"
#include "vsg/code.hpp"
#include "vsg/laurent.hpp"
#include "vsg/rational.hpp"

using namespace vsg;

TEST_CASE("bigint agrees with native arithmetic on random operands") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 4000; ++i) {
    long long a = static_cast<long long>(rng() % 2000001) - 1000000;
    long long b = static_cast<long long>(rng() % 2000001) - 1000000;
    BigInt A(a), B(b);
    CHECK((A + B).to_string() == std::to_string(a + b));
    CHECK((A - B).to_string() == std::to_string(a - b));
    CHECK((A * B).to_string() == std::to_string(a * b));
    if (b != 0) {
      CHECK((A / B).to_string() == std::to_string(a / b));
      CHECK((A % B).to_string() == std::to_string(a % b));
    }
    CHECK((A < B) == (a < b));
  }
}

TEST_CASE("bigint divmod identity on wide operands") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    BigInt a(1), b(1);
    for (int k = 0; k < 6; ++k) a = a * BigInt(static_cast<long long>(rng() % 1000000000ll + 1));
    for (int k = 0; k < 3; ++k) b = b * BigInt(static_cast<long long>(rng() % 1000000000ll + 1));
    if (rng() & 1) a = -a;
    if (rng() & 1) b = -b;
    BigInt q = a / b, r = a % b;
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
  }
  CHECK(BigInt::from_string("123456789012345678901234567890").to_string() ==
        "123456789012345678901234567890");
}

TEST_CASE("rational normalization and ordering") {
  Rational a(BigInt(2), BigInt(-4));
  CHECK(a.to_string() == "-1/2");
  CHECK(Rational::parse("-1/2") == a);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 7) * Rational(7, 3) == Rational(1));
  CHECK(Rational(-1, 2) < Rational(1, 3));
}

TEST_CASE("laurent ring laws on random polynomials") {
  std::mt19937 rng(11);
  auto rand_poly = [&]() {
    LaurentPoly p;
    int terms = static_cast<int>(rng() % 5);
    for (int i = 0; i < terms; ++i)
      p = p + LaurentPoly::monomial(static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 11) - 5);
    return p;
  };
  for (int i = 0; i < 200; ++i) {
    LaurentPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("sigma squared has min exponent -2 and coefficients 1,2,3,2,1") {
  LaurentPoly s2 = LaurentPoly::sigma() * LaurentPoly::sigma();
  CHECK(s2.min_exponent() == -2);
  for (int e = -2; e <= 2; ++e) CHECK(s2.coeff(e) == 3 - std::abs(e));
  CHECK(s2.to_string() == "1*A^2+2*A^1+3*A^0+2*A^-1+1*A^-2");
}

TEST_CASE("validate accepts the trivial theta") {
  CHECK(validate(fixtures::theta_twisted()).ok);
  CHECK(validate(fixtures::theta_planar()).ok);
}

TEST_CASE("validate flags an unpaired crossing") {
  VsgCode c = fixtures::unknot0();
  c.passages["e"] = {{"c1", Role::Over, 1}};
  auto rep = validate(c);
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.violations[0].rule == "unpaired-crossing");
}

TEST_CASE("validate flags a sign mismatch") {
  VsgCode c = fixtures::unknot0();
  c.passages["e"] = {{"c1", Role::Over, 1}, {"c1", Role::Under, -1}};
  auto rep = validate(c);
  REQUIRE_FALSE(rep.ok);
  bool found = false;
  for (auto& v : rep.violations) found |= v.rule == "sign-mismatch";
  CHECK(found);
}

TEST_CASE("serialize/parse round trip is the identity on random codes") {
  std::mt19937 rng(5);
  for (int i = 0; i < 150; ++i) {
    VsgCode c = fixtures::random_code(rng);
    REQUIRE(validate(c).ok);
    VsgCode back = parse_code(canonical_serialize(c));
    CHECK(back == c);
    CHECK(canonical_serialize(back) == canonical_serialize(c));
  }
}

TEST_CASE("canonical serialization distinguishes signs") {
  VsgCode a = fixtures::kink(1), b = fixtures::kink(-1);
  CHECK(canonical_serialize(a) != canonical_serialize(b));
}

TEST_CASE("canonical_form relabels by traversal order and is idempotent") {
  VsgCode c = fixtures::unknot0();
  c.passages["e"] = {{"x", Role::Over, 1}, {"q", Role::Over, -1}, {"x", Role::Under, 1},
                     {"q", Role::Under, -1}};
  VsgCode cf = canonical_form(c);
  CHECK(cf.passages["e"][0].crossing == "c1");
  CHECK(cf.passages["e"][1].crossing == "c2");
  CHECK(canonical_form(cf) == cf);
}

TEST_CASE("canonical_form is invariant under random crossing-label bijections") {
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    VsgCode c = fixtures::random_code(rng);
    std::set<std::string> labels;
    for (auto& [e, seq] : c.passages)
      for (auto& p : seq) labels.insert(p.crossing);
    std::vector<std::string> names;
    for (size_t k = 0; k < labels.size(); ++k) names.push_back("r" + std::to_string(k));
    std::shuffle(names.begin(), names.end(), rng);
    std::map<std::string, std::string> pi;
    size_t at = 0;
    for (auto& l : labels) pi[l] = names[at++];
    VsgCode renamed = c;
    for (auto& [e, seq] : renamed.passages)
      for (auto& p : seq) p.crossing = pi[p.crossing];
    CHECK(canonical_serialize(canonical_form(renamed)) == canonical_serialize(canonical_form(c)));
  }
}

TEST_CASE("serialization ignores JSON key insertion order") {
  std::string reordered = R"({"passages":{"e":[]},"vertices":["v"],"version":1,)"
                          R"("edges":[{"tail":"v","head":"v","id":"e"}],)"
                          R"("rotations":{"v":[["e","tail"],["e","head"]]}})";
  CHECK(canonical_serialize(parse_code(reordered)) ==
        canonical_serialize(fixtures::unknot0()));
}

TEST_CASE("arrow_sets direction and conservation") {
  // single positive kink: over then under on the same edge
  VsgCode k = fixtures::kink(1);
  auto as = arrow_sets(k);
  REQUIRE(as.count({"e", "e"}) == 1);
  CHECK(as[{"e", "e"}] == std::vector<Arrow>{{"c1", 1}});

  VsgCode two;
  two.vertices = {"a", "b"};
  two.edges = {{"e1", "a", "a"}, {"e2", "b", "b"}};
  two.rotations["a"] = {{"e1", End::Tail}, {"e1", End::Head}};
  two.rotations["b"] = {{"e2", End::Tail}, {"e2", End::Head}};
  two.passages["e1"] = {{"c1", Role::Under, -1}};
  two.passages["e2"] = {{"c1", Role::Over, -1}};
  auto as2 = arrow_sets(two);
  CHECK(as2[{"e1", "e2"}] == std::vector<Arrow>{{"c1", -1}});
  CHECK(as2.count({"e2", "e1"}) == 0);

  CHECK(arrow_sets(fixtures::theta_planar()).empty());

  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    VsgCode c = fixtures::random_code(rng);
    size_t total = 0;
    for (auto& [k2, v] : arrow_sets(c)) total += v.size();
    CHECK(total == static_cast<size_t>(c.crossing_count()));
  }
}

TEST_CASE("shadow strips decorations and keeps sequences") {
  VsgCode k = fixtures::kink(1);
  ShadowCode s = shadow(k);
  CHECK(s.passages["e"] == std::vector<std::string>{"c1", "c1"});
  CHECK(shadow(s) == s);
  CHECK(shadow(fixtures::theta_planar()).passages["e1"].empty());
}

TEST_CASE("reverse_edge flips signs of singly-met crossings only") {
  VsgCode c = fixtures::virtual_trefoil();  // both passages of each crossing on e
  VsgCode r = reverse_edge(c, "e");
  for (auto& p : r.passages["e"]) CHECK(p.sign == 1);
  CHECK(r.edges[0].tail == "v");
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    VsgCode a = fixtures::random_code(rng);
    std::string eid = a.edges[rng() % a.edges.size()].id;
    CHECK(validate(reverse_edge(a, eid)).ok);
    CHECK(reverse_edge(reverse_edge(a, eid), eid) == a);
  }
}
