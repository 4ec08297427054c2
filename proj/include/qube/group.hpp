#pragma once

// Rubik's group action on CubeState: the six face generators as
// permutation/translation/spin tables, three middle slices, and the macro
// moves built from them (squares, commutators, corner twist, edge 3-cycles).

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qube/cube.hpp"

namespace qube {

enum class SpinAction : std::uint8_t { Identity, EdgeFlip, CornerA, CornerC };

/// Residue added to the spin by the action (edges mod 2, corners mod 3).
constexpr int spin_delta(SpinAction a) {
  switch (a) {
    case SpinAction::EdgeFlip: return 1;
    case SpinAction::CornerA: return 1;
    case SpinAction::CornerC: return 2;
    default: return 0;
  }
}
constexpr SpinAction inverse(SpinAction a) {
  if (a == SpinAction::CornerA) return SpinAction::CornerC;
  if (a == SpinAction::CornerC) return SpinAction::CornerA;
  return a;
}

using Vec3 = std::array<int, 3>;

struct CycleEntry {
  int slot;
  Vec3 translation;
  SpinAction spin;
};

enum class Layer : std::uint8_t { U, D, F, B, L, R, Mx, My, Mz };
inline constexpr int kFaceCount = 6;

struct GeneratorSpec {
  Layer layer;
  std::vector<std::array<CycleEntry, 4>> cycles;  // edge cycle, then corner cycle if any
};

/// Static tables: index by Layer. Faces carry an edge and a corner 4-cycle,
/// slices a single edge 4-cycle.
const GeneratorSpec& generator_spec(Layer layer);
/// FNV-1a over every table entry; pinned by tests to catch edits.
std::uint64_t table_checksum();

/// Net action of a move on slots: the content of slot a moves to dest[a],
/// gaining shift[a] in displacement and twist[a] in spin residue.
struct Transform {
  std::array<std::uint8_t, kCubieCount> dest{};
  std::array<std::uint8_t, kCubieCount> twist{};
  std::array<Vec3, kCubieCount> shift{};

  static Transform identity();
  static Transform from_spec(const GeneratorSpec& spec);
  /// Apply *this first, then next.
  Transform then(const Transform& next) const;
  Transform inverse() const;
  bool is_identity() const;
  /// Slots whose content moves elsewhere.
  std::vector<int> moved_slots() const;
  friend bool operator==(const Transform&, const Transform&) = default;
};

CubeState apply(const CubeState& s, const Transform& t);

enum class MoveKind : std::uint8_t { Turn, Square, Commutator, CornerTwist, EdgeCycle };

/// One action. Turn covers faces and slices; the rest are macros that expand
/// to Turn sequences.
///   Turn        layer, inverted
///   Square      layer (face only)
///   Commutator  a, b: a b a' b'
///   CornerTwist (R D R' D') twice, inverted flag for the reverse
///   EdgeCycle   c1 = a m a' m', c2 = b m b' m'; forward (C3) is
///               c1 c2 c1' c2 c1 c2', backward (C4) its inverse; an optional
///               setup face X conjugates: X, cycle, X'.
struct Move {
  MoveKind kind = MoveKind::Turn;
  Layer a = Layer::U;
  Layer b = Layer::U;
  Layer m = Layer::Mx;
  bool inverted = false;  // Turn: prime; EdgeCycle: C4; CornerTwist: reverse
  bool slice_inverted = false;
  std::optional<Layer> setup;

  static Move turn(Layer l, bool inv = false) { return Move{MoveKind::Turn, l, l, Layer::Mx, inv, false, {}}; }
  static Move square(Layer l) { return Move{MoveKind::Square, l, l, Layer::Mx, false, false, {}}; }
  static Move commutator(Layer a, Layer b) { return Move{MoveKind::Commutator, a, b, Layer::Mx, false, false, {}}; }
  static Move corner_twist(bool inv = false) { return Move{MoveKind::CornerTwist, Layer::R, Layer::D, Layer::Mx, inv, false, {}}; }
  static Move edge_cycle(bool c4, Layer a, Layer b, Layer m, bool m_inv, std::optional<Layer> setup = {}) {
    return Move{MoveKind::EdgeCycle, a, b, m, c4, m_inv, setup};
  }
  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

/// Macro (or turn) as a list of Turn moves. Throws std::invalid_argument for
/// a plain Turn when strict is set.
MoveSequence expand_macro(const Move& m, bool strict = true);
Move inverse(const Move& m);
MoveSequence inverse(const MoveSequence& seq);
/// Net transform of a move; cached per distinct move.
Transform transform_of(const Move& m);
Transform transform_of(const MoveSequence& seq);

CubeState apply(const CubeState& s, const Move& m);
CubeState apply(const CubeState& s, const MoveSequence& seq);

/// Text notation: U U' U2 Mx Mx' [R,D] T2 T2' C3{U,D,Mx} C4{U,D,Mx'} and
/// setup-conjugated X>C3{...}. Case-sensitive.
std::string to_string(const Move& m);
std::string to_string(const MoveSequence& seq);
/// Throws std::invalid_argument naming the offending token.
Move parse_move(std::string_view token);
MoveSequence parse_sequence(std::string_view text);

/// Per-phase action sets, in network output order.
///   1: twelve quarter turns        2: T2, U, D
///   3: U U' D D' B2 F2 L2 R2       4: deduplicated edge 3-cycles
const std::vector<Move>& action_set(int phase);
/// The twelve quarter turns, used for full-cube scrambles.
const std::vector<Move>& fundamental_moves();

struct Scramble {
  CubeState state;
  MoveSequence moves;
};
Scramble scramble(std::mt19937_64& rng, const std::vector<Move>& actions, int length);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};
struct GroupReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string to_text() const;
};
GroupReport group_property_report();

}  // namespace qube
