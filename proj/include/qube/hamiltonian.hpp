#pragma once

// Ising-style energies over cubie spins and displacements. All arithmetic is
// exact integer; reals appear only at the reward boundary.

#include <cstdint>
#include <vector>

#include "qube/config.hpp"
#include "qube/cube.hpp"

namespace qube {

/// In phase order: orient edges, orient corners, place corners, place edges.
enum class PhaseHamiltonian { EdgeSpin = 1, CornerSpin = 2, CornerPosition = 3, EdgePosition = 4 };

PhaseHamiltonian hamiltonian_for_phase(int phase);

/// Coupling matrices. J is symmetric per cubie class; B holds one column per
/// axis for positions and a single column for spins.
struct CoefficientSet {
  using Matrix = std::vector<std::vector<std::int64_t>>;
  Matrix j_edges;           // 12 x 12
  Matrix j_corners;         // 8 x 8
  Matrix b_edge_position;   // 12 x 3
  Matrix b_corner_position; // 8 x 3
  Matrix b_edge_spin;       // 12 x 1
  Matrix b_corner_spin;     // 8 x 1

  /// J = identity, B = all ones.
  static CoefficientSet defaults();
  /// Keys: J.mode = diagonal|uniform|file (J.edges_file, J.corners_file),
  /// B.mode = ones|file (B.edge_position_file, B.corner_position_file,
  /// B.edge_spin_file, B.corner_spin_file). Integer entries.
  static CoefficientSet from(const KeyValueConfig& cfg);
  /// Throws std::invalid_argument on wrong shapes, asymmetric or negative J,
  /// or a non-positive B entry (B > 0 is what makes energy zero exactly on
  /// the ground condition).
  void validate() const;
};

std::int64_t energy(const CubeState& s, PhaseHamiltonian which, const CoefficientSet& k);
std::int64_t total_energy(const CubeState& s, const CoefficientSet& k);
bool is_ground(const CubeState& s, PhaseHamiltonian which, const CoefficientSet& k);
/// -energy, plus premium when the energy is zero.
double reward(const CubeState& next, PhaseHamiltonian which, const CoefficientSet& k, double premium);

}  // namespace qube
