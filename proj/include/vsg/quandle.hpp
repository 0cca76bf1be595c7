#pragma once

#include <string>
#include <vector>

#include "vsg/code.hpp"
#include "vsg/diagram.hpp"

namespace vsg {

// Finite virtual-quandle structure: a set with a self-distributive operation,
// an involution bar, an automorphism f, and a declared parameter d.
struct FiniteVQS {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> op;  // op[a][b] = a circ b
  std::vector<int> bar;
  std::vector<int> f;
  int d = 1;

  int size() const { return static_cast<int>(elements.size()); }
  int f_pow(int a, int k) const;  // k may be negative

  static FiniteVQS from_json(const std::string& text);
  std::string to_json() const;

  static FiniteVQS trivial();
  // a circ b = 2b - a mod n; bar = f = identity, d = 2
  static FiniteVQS dihedral(int n);
};

// gcd of vertex valences; loops count twice. Throws on vertexless codes.
int gcd_valence(const VsgCode& code);

// Exhaustively checks every axiom over all tuples; reports the first failing
// instance per axiom.
ValidationReport validate_vqs(const FiniteVQS& s, int d);

struct ColoringOptions {
  int max_arcs = 64;
  unsigned variant = 0;  // realization variant to color
};

// Colorings of realize(code): arcs break at under-passages, virtual
// crossings, and vertices. Crossing rule: out = in circ over (sign +),
// out = in circ bar(over) (sign -). A strand through a virtual crossing
// picks up f or f^-1 by the side the other strand passes. At a vertex all
// entering arcs share a value a and every leaving arc carries bar(a).
long long count_colorings(const VsgCode& code, const FiniteVQS& s, const ColoringOptions& opts = {});

// Same, on an already-realized diagram.
long long count_colorings_on(const PlanarDiagram& diagram, const FiniteVQS& s, int max_arcs = 64);

}  // namespace vsg
