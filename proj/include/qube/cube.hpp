#pragma once

// Cubie state space: 12 edges and 8 corners, each carrying an integer
// displacement from its home slot and a spin eigenvalue.
//
// Numbering: cubies and slots share the index set 1..20. Ids 1..12 are edges,
// 13..20 are corners, and slot i is the home of cubie i.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qube {

inline constexpr int kEdgeCount = 12;
inline constexpr int kCornerCount = 8;
inline constexpr int kCubieCount = kEdgeCount + kCornerCount;
inline constexpr int kPhaseCount = 4;

struct CubieId {
  int value = 1;

  constexpr CubieId() = default;
  constexpr explicit CubieId(int v) : value(v) {}
  constexpr bool is_edge() const { return value >= 1 && value <= kEdgeCount; }
  constexpr bool is_corner() const { return value > kEdgeCount && value <= kCubieCount; }
  constexpr int index() const { return value - 1; }
  friend constexpr auto operator<=>(CubieId, CubieId) = default;
};

struct SlotId {
  int value = 1;

  constexpr SlotId() = default;
  constexpr explicit SlotId(int v) : value(v) {}
  constexpr bool is_edge() const { return value >= 1 && value <= kEdgeCount; }
  constexpr bool is_corner() const { return value > kEdgeCount && value <= kCubieCount; }
  constexpr int index() const { return value - 1; }
  friend constexpr auto operator<=>(SlotId, SlotId) = default;
};

/// Grid steps (n_x, n_y, n_z) a cubie has taken away from its home slot.
struct Displacement {
  std::array<int, 3> n{0, 0, 0};

  constexpr Displacement& operator+=(const std::array<int, 3>& t) {
    for (int i = 0; i < 3; ++i) n[i] += t[i];
    return *this;
  }
  constexpr bool is_zero() const { return n[0] == 0 && n[1] == 0 && n[2] == 0; }
  constexpr int squared_norm() const { return n[0] * n[0] + n[1] * n[1] + n[2] * n[2]; }
  friend constexpr bool operator==(const Displacement&, const Displacement&) = default;
};

enum class EdgeOrientation : std::uint8_t { Oriented = 0, Flipped = 1 };

/// Values are the eigenvalues of the corner spin observable.
enum class CornerOrientation : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

/// Shifted edge spin: 0 when oriented, -1 when flipped.
constexpr int eigenvalue(EdgeOrientation s) { return s == EdgeOrientation::Oriented ? 0 : -1; }
constexpr int eigenvalue(CornerOrientation s) { return static_cast<int>(s); }

/// Corner orientations live in Z/3; residue 1 is Plus, residue 2 is Minus.
constexpr int residue(CornerOrientation s) { return (static_cast<int>(s) + 3) % 3; }
constexpr CornerOrientation corner_from_residue(int r) {
  r = ((r % 3) + 3) % 3;
  return r == 0 ? CornerOrientation::Zero : (r == 1 ? CornerOrientation::Plus : CornerOrientation::Minus);
}

class CubeState {
 public:
  static CubeState solved();

  CubieId occupant(SlotId slot) const { return CubieId(occupancy_[slot.index()] + 1); }
  SlotId slot_of(CubieId cubie) const;
  const Displacement& displacement(CubieId cubie) const { return disp_[cubie.index()]; }
  EdgeOrientation edge_spin(CubieId cubie) const;
  CornerOrientation corner_spin(CubieId cubie) const;
  /// S' eigenvalue for edges, sigma_z eigenvalue for corners.
  int spin_eigenvalue(CubieId cubie) const;

  /// Raw spin residue: 0/1 for edges, 0/1/2 (Zero/Plus/Minus) for corners.
  int spin_residue(CubieId cubie) const { return spin_[cubie.index()]; }

  // Low-level mutation used by move application. Callers keep the
  // invariants; is_valid() can check them afterwards.
  void set_occupant(SlotId slot, CubieId cubie) { occupancy_[slot.index()] = static_cast<std::uint8_t>(cubie.index()); }
  void set_displacement(CubieId cubie, const Displacement& d) { disp_[cubie.index()] = d; }
  void set_spin_residue(CubieId cubie, int r);

  /// Occupancy is a bijection respecting the edge/corner partition and spins
  /// are in range.
  bool is_valid() const;

  int flipped_edge_count() const;
  /// Sum of corner eigenvalues reduced mod 3 into 0..2.
  int corner_twist_sum_mod3() const;

  friend bool operator==(const CubeState&, const CubeState&) = default;

 private:
  std::array<std::uint8_t, kCubieCount> occupancy_{};  // slot index -> cubie index
  std::array<Displacement, kCubieCount> disp_{};       // per cubie
  std::array<std::uint8_t, kCubieCount> spin_{};       // per cubie residue
};

/// Observation vector length fed to the phase network: 12, 16, 24, 36.
int observation_size(int phase);

/// Phase-specific input encoding.
///   1: S' eigenvalue of the edge occupying each edge slot, slot order.
///   2: per corner slot 13..20, the pair ([spin is Plus], [spin is Minus]).
///   3: corner displacements, cubie order, (n_x, n_y, n_z) each.
///   4: edge displacements, cubie order.
/// Throws std::invalid_argument for a phase outside 1..4.
std::vector<double> observe(const CubeState& state, int phase);

/// All displacements zero and every spin in reference orientation.
bool is_solved(const CubeState& state);

/// Unfolded text diagram: one line per slot group, cubie ids with spin marks.
std::string render_net(const CubeState& state);

}  // namespace qube

template <>
struct std::hash<qube::CubeState> {
  std::size_t operator()(const qube::CubeState& s) const noexcept;
};
