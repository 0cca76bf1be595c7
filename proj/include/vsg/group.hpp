#pragma once

#include <string>
#include <vector>

#include "vsg/code.hpp"

namespace vsg {

// Finite presentation; words are sequences of nonzero ints, +k / -k for the
// k-th generator and its inverse (1-based). Stored freely reduced.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;

  std::string to_text() const;  // "gens: a,b" / "rels: a b A" lines
};

// Wirtinger-style presentation: one generator per arc (maximal edge segment
// between under-passages and vertices), conjugation relations at classical
// crossings, a cyclic product relation at every vertex.
GroupPresentation wirtinger(const VsgCode& code);

// Generator eliminations via single-occurrence relators, free and cyclic
// reduction. Terminates; presents an isomorphic group.
GroupPresentation tietze_simplify(const GroupPresentation& p);

struct Abelianization {
  int free_rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1, divisibility order
};
Abelianization abelianization(const GroupPresentation& p);

struct FiniteGroupTable {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;  // table[a][b] = a*b
  int identity = 0;

  static FiniteGroupTable from_json(const std::string& text);  // verifies axioms
  static FiniteGroupTable symmetric3();
  int inverse(int a) const;
  int size() const { return static_cast<int>(elements.size()); }
};

struct HomCountOptions {
  long long max_assignments = 200000000;
};

// Exact number of homomorphisms into the finite group, by backtracking.
long long count_homs(const GroupPresentation& p, const FiniteGroupTable& g,
                     const HomCountOptions& opts = {});

}  // namespace vsg
