#pragma once

#include <map>
#include <string>
#include <vector>

#include "vsg/code.hpp"
#include "vsg/laurent.hpp"

namespace vsg {

// One local vertex replacement: the chosen pair of half-edges is joined into
// a strand; the remaining legs become free ends.
struct Replacement {
  std::string vertex;
  HalfEdge a, b;
};

// A closed virtual-link diagram: cyclic passage sequences per component.
// Signs are recomputed against the traced component orientations.
struct VirtualLink {
  std::vector<std::vector<Passage>> components;

  int crossing_count() const;
  std::string to_json() const;
  static VirtualLink from_json(const std::string& text);
};

// all per-vertex choices, in deterministic order; count = prod d_v(d_v-1)/2
std::vector<std::vector<Replacement>> enumerate_replacements(const VsgCode& code);

// trace the strands for one full choice, erase open components together with
// every crossing they carry, canonicalize the remainder
VirtualLink link_of(const VsgCode& code, const std::vector<Replacement>& choice);

struct TgOptions {
  long long max_choices = 1000000;
  bool include_empty = true;
  bool distinct = false;  // collapse the multiset to a set
};

// the multiset T(G), each link canonicalized; sorted for comparison
std::vector<VirtualLink> tg(const VsgCode& code, const TgOptions& opts = {});

// Gauss formula: (positive - negative)/2 over crossings joining components
// i and j; returns the numerator of halves (lk = halves/2)
long long linking_halves(const VirtualLink& link, int i, int j);

struct BracketOptions {
  int max_crossings = 16;
};

// Kauffman bracket state sum. Smoothing weights follow the same
// sign-dependent reconnection table as the Yamada engine; loops count via
// delta = -A^2 - A^-2 with weight delta^(loops-1). bracket(empty) := 1.
LaurentPoly bracket(const VirtualLink& link, const BracketOptions& opts = {});

int writhe(const VirtualLink& link);

// f = (-A^3)^(-writhe) * bracket
LaurentPoly f_poly(const VirtualLink& link, const BracketOptions& opts = {});

// invariant tuple used by the move-invariance suites: component count,
// sorted linking halves, sorted f-polynomial strings
std::string invariant_tuple(const VirtualLink& link);

}  // namespace vsg
