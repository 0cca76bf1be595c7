#pragma once

#include <map>
#include <string>
#include <vector>

#include "vsg/code.hpp"
#include "vsg/laurent.hpp"

namespace vsg {

// Crossing-free multigraph remaining after all crossings are resolved.
struct StateGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // undirected; loops allowed
};

// Deletion-contraction evaluation down to bouquets of circles:
//   R(single vertex) = -1, R(B_n) = -(-sigma)^n, R(empty) = 1,
//   disjoint unions multiply, wedges multiply with a sign.
LaurentPoly graph_eval(const StateGraph& g);

struct YamadaOptions {
  int max_crossings = 14;
  int workers = 1;
};

// The skein-defined polynomial R(G); directions are ignored. Virtual
// crossings never reach this level (they are invisible in codes).
LaurentPoly yamada(const VsgCode& code, const YamadaOptions& opts = {});

struct NormalizedYamada {
  bool zero = false;  // R = 0 has no (-A)^-m normalization
  LaurentPoly value;  // meaningful when !zero
};
NormalizedYamada yamada_normalized(const VsgCode& code, const YamadaOptions& opts = {});

}  // namespace vsg
