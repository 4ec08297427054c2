#pragma once

// Four trained agents chained into a full solver, plus the evaluation sweep.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <random>

#include "qube/config.hpp"
#include "qube/ddqn.hpp"

namespace qube {

struct SolverModels {
  std::array<Mlp, 4> nets;
  std::array<PhaseConfig, 4> configs;
  CoefficientSet coeffs = CoefficientSet::defaults();
};

/// Reads DIR/phase1.qmlp .. DIR/phase4.qmlp. Throws ModelFileError or
/// std::invalid_argument when a model's dims don't fit its phase.
SolverModels load_models(const std::filesystem::path& dir, const KeyValueConfig& cfg);
std::filesystem::path model_path(const std::filesystem::path& dir, int phase);

struct SolveResult {
  std::array<MoveSequence, 4> phase_moves;
  std::array<bool, 4> phase_success{};
  int failure_phase = 0;  // 1..4, 0 when no phase failed
  bool success = false;
  CubeState final_state = CubeState::solved();

  int total_moves() const;
  MoveSequence all_moves() const;
};

/// Greedy phases in order, each capped by its config's solve cap. With trace
/// set, prints the net diagram after every move.
SolveResult solve(const CubeState& start, const SolverModels& models, std::ostream* trace = nullptr);

struct LengthBin {
  int scramble_len = 0;
  int episodes = 0;
  std::array<int, 4> reached{};  // episodes that entered phase k
  std::array<int, 4> passed{};   // of those, phase k succeeded
  int solved = 0;
};

struct EvalReport {
  std::vector<LengthBin> bins;
  int episodes = 0;
  int solved = 0;
  int replay_mismatches = 0;  // reported successes that failed replay
  double total_success() const { return episodes ? static_cast<double>(solved) / episodes : 0.0; }
  double phase_success(int phase) const;
  void write_csv(std::ostream& os) const;
};

/// n episodes; lengths cycle through min_len..max_len, moves drawn from the
/// twelve quarter turns. Every success is replayed from the scrambled state.
EvalReport evaluate_full(const SolverModels& models, int n, int min_len, int max_len, std::uint64_t seed);

}  // namespace qube
