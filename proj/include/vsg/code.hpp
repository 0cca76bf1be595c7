#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsg {

// Error taxonomy shared by all modules; the CLI maps these to exit codes.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PolicyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Role : uint8_t { Over, Under };
enum class End : uint8_t { Tail, Head };

inline Role opposite(Role r) { return r == Role::Over ? Role::Under : Role::Over; }

// One classical-crossing passage along an edge.
struct Passage {
  std::string crossing;
  Role role = Role::Over;
  int sign = 1;  // +1 / -1
  bool operator==(const Passage& o) const = default;
};

// A reference to one end of one edge.
struct HalfEdge {
  std::string edge;
  End end = End::Tail;
  bool operator==(const HalfEdge& o) const = default;
  bool operator<(const HalfEdge& o) const {
    if (edge != o.edge) return edge < o.edge;
    return end < o.end;
  }
};

struct EdgeRec {
  std::string id, tail, head;
  bool operator==(const EdgeRec& o) const = default;
};

// The canonical datum: directed multigraph + per-edge passage sequences
// + per-vertex rotations (cyclic, stored with index-0 anchoring).
struct VsgCode {
  std::vector<std::string> vertices;
  std::vector<EdgeRec> edges;
  std::map<std::string, std::vector<HalfEdge>> rotations;
  std::map<std::string, std::vector<Passage>> passages;

  const EdgeRec& edge(const std::string& id) const;
  int crossing_count() const;
  // degree = rotation length; loops contribute two half-edges
  int degree(const std::string& vertex) const;
};

// Structural equality: rotations compared up to cyclic shift, all else exact.
bool operator==(const VsgCode& a, const VsgCode& b);

struct ShadowCode {
  std::vector<std::string> vertices;
  std::vector<EdgeRec> edges;
  std::map<std::string, std::vector<HalfEdge>> rotations;
  std::map<std::string, std::vector<std::string>> passages;  // labels only
  bool operator==(const ShadowCode& o) const = default;
};

struct Violation {
  std::string rule;
  std::string where;
};
struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationReport validate(const VsgCode& code);
// Throws ValidationError unless validate(code).ok.
void require_valid(const VsgCode& code);

// Canonical single-line JSON (version 1): keys sorted, arrays in semantic
// order, no insignificant whitespace.
std::string canonical_serialize(const VsgCode& code);
VsgCode parse_code(const std::string& json_text);

// Relabels crossings c1, c2, ... by first occurrence along edges in list
// order, passages tail-to-head; rotation lists are rotated to their least
// cyclic representative. Stable under crossing-label bijections.
VsgCode canonical_form(const VsgCode& code);

struct Arrow {
  std::string label;
  int sign;
  bool operator==(const Arrow& o) const = default;
};
// A_{i,j}: arrows from the edge holding the under-passage to the edge
// holding the over-passage.
std::map<std::pair<std::string, std::string>, std::vector<Arrow>> arrow_sets(const VsgCode& code);

ShadowCode shadow(const VsgCode& code);
inline ShadowCode shadow(const ShadowCode& code) { return code; }

// Datum-level edge reversal: reverses the passage sequence, swaps the two
// half-edge records, and flips the sign of every crossing met exactly once.
VsgCode reverse_edge(const VsgCode& code, const std::string& edge_id);

// Disjoint union with "<prefix>" prepended to every id of `b`.
VsgCode disjoint_union(const VsgCode& a, const VsgCode& b, const std::string& prefix);

}  // namespace vsg
