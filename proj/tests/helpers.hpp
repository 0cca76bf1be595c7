#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "vsg/code.hpp"

// Shared fixtures. The planar theta carries mirrored rotations at its two
// vertices (that is the flat embedding); the twisted variant keeps the same
// rotation list at both ends.
namespace fixtures {

inline vsg::VsgCode theta_planar() {
  vsg::VsgCode c;
  c.vertices = {"u", "v"};
  c.edges = {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}};
  c.rotations["u"] = {{"e1", vsg::End::Tail}, {"e2", vsg::End::Tail}, {"e3", vsg::End::Tail}};
  c.rotations["v"] = {{"e3", vsg::End::Head}, {"e2", vsg::End::Head}, {"e1", vsg::End::Head}};
  c.passages = {{"e1", {}}, {"e2", {}}, {"e3", {}}};
  return c;
}

inline vsg::VsgCode theta_twisted() {
  vsg::VsgCode c = theta_planar();
  c.rotations["v"] = {{"e1", vsg::End::Head}, {"e2", vsg::End::Head}, {"e3", vsg::End::Head}};
  return c;
}

inline vsg::VsgCode unknot0() {
  vsg::VsgCode c;
  c.vertices = {"v"};
  c.edges = {{"e", "v", "v"}};
  c.rotations["v"] = {{"e", vsg::End::Tail}, {"e", vsg::End::Head}};
  c.passages = {{"e", {}}};
  return c;
}

inline vsg::VsgCode kink(int sign, bool over_first = true) {
  vsg::VsgCode c = unknot0();
  vsg::Role r1 = over_first ? vsg::Role::Over : vsg::Role::Under;
  c.passages["e"] = {{"c1", r1, sign}, {"c1", vsg::opposite(r1), sign}};
  return c;
}

inline vsg::VsgCode virtual_trefoil() {
  vsg::VsgCode c = unknot0();
  c.passages["e"] = {{"c1", vsg::Role::Over, 1},
                     {"c2", vsg::Role::Over, 1},
                     {"c1", vsg::Role::Under, 1},
                     {"c2", vsg::Role::Under, 1}};
  return c;
}

inline vsg::VsgCode classical_trefoil() {
  vsg::VsgCode c = unknot0();
  c.passages["e"] = {{"c1", vsg::Role::Over, 1},  {"c2", vsg::Role::Under, 1},
                     {"c3", vsg::Role::Over, 1},  {"c1", vsg::Role::Under, 1},
                     {"c2", vsg::Role::Over, 1},  {"c3", vsg::Role::Under, 1}};
  return c;
}

inline vsg::VsgCode bouquet(int loops) {
  vsg::VsgCode c;
  c.vertices = {"v"};
  for (int i = 1; i <= loops; ++i) {
    std::string id = "e" + std::to_string(i);
    c.edges.push_back({id, "v", "v"});
    c.rotations["v"].push_back({id, vsg::End::Tail});
    c.rotations["v"].push_back({id, vsg::End::Head});
    c.passages[id] = {};
  }
  c.rotations["v"];
  return c;
}

// Three strands in a geometric triangle (heights L1 > L2 > L3, all oriented
// forward): a ready-made Reidemeister III instance.
inline vsg::VsgCode riii_instance() {
  vsg::VsgCode c;
  c.vertices = {"p", "q", "r"};
  c.edges = {{"e1", "p", "p"}, {"e2", "q", "q"}, {"e3", "r", "r"}};
  c.rotations["p"] = {{"e1", vsg::End::Tail}, {"e1", vsg::End::Head}};
  c.rotations["q"] = {{"e2", vsg::End::Tail}, {"e2", vsg::End::Head}};
  c.rotations["r"] = {{"e3", vsg::End::Tail}, {"e3", vsg::End::Head}};
  c.passages["e1"] = {{"x01", vsg::Role::Over, 1}, {"x02", vsg::Role::Over, -1}};
  c.passages["e2"] = {{"x01", vsg::Role::Under, 1}, {"x12", vsg::Role::Over, -1}};
  c.passages["e3"] = {{"x12", vsg::Role::Under, -1}, {"x02", vsg::Role::Under, -1}};
  return c;
}

// Random valid code: valid by construction (labels inserted in mated pairs).
inline vsg::VsgCode random_code(std::mt19937& rng, int max_vertices = 3, int max_edges = 4,
                                int max_crossings = 6) {
  auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  vsg::VsgCode c;
  int nv = ri(1, max_vertices);
  for (int i = 0; i < nv; ++i) c.vertices.push_back("v" + std::to_string(i));
  int ne = ri(1, max_edges);
  for (int i = 0; i < ne; ++i) {
    std::string id = "e" + std::to_string(i);
    c.edges.push_back({id, c.vertices[ri(0, nv - 1)], c.vertices[ri(0, nv - 1)]});
    c.passages[id] = {};
  }
  for (auto& e : c.edges) {
    c.rotations[e.tail].push_back({e.id, vsg::End::Tail});
    c.rotations[e.head].push_back({e.id, vsg::End::Head});
  }
  for (auto& v : c.vertices) {
    auto& rot = c.rotations[v];
    std::shuffle(rot.begin(), rot.end(), rng);
  }
  int nc = ri(0, max_crossings);
  for (int i = 0; i < nc; ++i) {
    std::string label = "x" + std::to_string(i);
    int sign = ri(0, 1) ? 1 : -1;
    std::string e1 = c.edges[ri(0, ne - 1)].id;
    std::string e2 = c.edges[ri(0, ne - 1)].id;
    auto& s1 = c.passages[e1];
    s1.insert(s1.begin() + ri(0, static_cast<int>(s1.size())), {label, vsg::Role::Over, sign});
    auto& s2 = c.passages[e2];
    s2.insert(s2.begin() + ri(0, static_cast<int>(s2.size())), {label, vsg::Role::Under, sign});
  }
  return c;
}

}  // namespace fixtures
