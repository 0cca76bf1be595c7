#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vsg/code.hpp"

namespace vsg {

enum class MoveId { I, II, III, IV, V, VI, VIstar, VIIstar, VIIIstar };

std::string move_name(MoveId m);
MoveId move_from_name(const std::string& s);
bool is_forbidden(MoveId m);

// Location descriptor for one move application. Fields are interpreted per
// move id; see apply_move. dir is "insert", "delete" or "apply"
// (self-inverse rewrites use "apply").
struct MoveSite {
  MoveId move = MoveId::I;
  std::string dir = "apply";

  std::string edge;    // I, VIII*: target edge; II: over-segment edge; IV: moving strand
  std::string edge2;   // II: under-segment edge
  std::string vertex;  // IV, V, VI, VI*, VII*
  int pos = 0;         // I, VIII*: passage index / gap; II: over gap or pair start; IV: block gap/start
  int pos2 = 0;        // II: under gap or pair start
  Role role = Role::Over;  // I: role of the first inserted passage; IV: moving strand role
  int sign = 1;            // I: kink sign; II: sign of the first over label
  bool flag = false;       // II: under pair order reversed; VI: earlier leg passes over
  int k = 0;               // VI, VII*: rotation position of the leg pair
  int start = 0;           // IV: first leg index in rotation
  int rot_dir = 1;         // IV: +1 rotation order, -1 reversed
  int twist = 1;           // V: twist direction
  std::vector<std::pair<std::string, int>> pairs;  // III: (edge, first index) of each pair
  std::vector<std::string> labels;  // insertions: exact labels to use (fresh ones otherwise)

  std::string to_json() const;
  static MoveSite from_json(const std::string& text);
};

struct MoveSet {
  bool pliable = false;             // includes move VI
  std::set<MoveId> forbidden;      // allowed subset of {VI*, VII*, VIII*}
  static MoveSet rigid() { return {false, {}}; }
  static MoveSet pliable_moves() { return {true, {}}; }
  static MoveSet all() {
    return {true, {MoveId::VIstar, MoveId::VIIstar, MoveId::VIIIstar}};
  }
  bool allows(MoveId m) const;
};

// Complete list of applicable reduction/rewrite sites plus the deterministic
// finite generator set of insertion sites.
std::vector<MoveSite> enumerate_moves(const VsgCode& code, const MoveSet& ms,
                                      bool with_insertions = true);

// Applies one move. Throws StructureError if the site is not applicable and
// PolicyError if the move is forbidden and not allowed by `ms`. On success
// *inverse (when given) receives a site that undoes the move.
VsgCode apply_move(const VsgCode& code, const MoveSite& site, const MoveSet& ms = MoveSet::all(),
                   MoveSite* inverse = nullptr);

enum class NormalizeLevel { RigidVIII, PliableAll };
VsgCode normalize_forbidden(const VsgCode& code, NormalizeLevel level);

struct SearchBudget {
  int max_crossings = 8;
  long long max_states = 1000000;
};

struct SearchVerdict {
  bool equivalent = false;
  std::vector<MoveSite> witness;  // replays from a to canonical_form-match with b
  long long states_visited = 0;
  int max_crossings_reached = 0;
};

// Bidirectional breadth-first search over canonical codes. "equivalent"
// verdicts carry a replayable witness; exhaustion proves nothing.
SearchVerdict search_equivalent(const VsgCode& a, const VsgCode& b, const SearchBudget& budget,
                                const MoveSet& ms);

std::string witness_to_json(const std::vector<MoveSite>& witness);
std::vector<MoveSite> witness_from_json(const std::string& text);

}  // namespace vsg
