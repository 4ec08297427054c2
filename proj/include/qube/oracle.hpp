#pragma once

// Brute-force ground truth: shortest solutions by BFS and an exhaustive
// invariant scan of the states reachable within a depth bound.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qube/group.hpp"
#include "qube/hamiltonian.hpp"

namespace qube {

/// Injective packing of occupancy, spins and displacements.
struct StateKey {
  std::array<std::uint64_t, 5> words{};
  friend bool operator==(const StateKey&, const StateKey&) = default;
};
StateKey encode(const CubeState& s);

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept;
};

enum class SearchStatus { Found, NotFound, BoundExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::NotFound;
  MoveSequence moves;  // valid when Found
  std::size_t nodes = 0;
};

/// Shortest action sequence from start to a state satisfying goal (default
/// is_solved), within max_depth, expanding at most node_budget states.
SearchResult bfs_solve(const CubeState& start, const std::vector<Move>& actions, int max_depth,
                       const std::function<bool(const CubeState&)>& goal = is_solved,
                       std::size_t node_budget = 10'000'000);

struct Violation {
  std::string check;
  MoveSequence witness;
  std::string detail;
};

struct ScanReport {
  int depth = 0;
  std::vector<std::size_t> layer_sizes;  // distinct states first reached at each depth
  std::size_t states = 0;
  std::vector<std::string> checks;       // names of the checks run
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_text() const;
};

/// Enumerates every state within depth moves of solved under actions (the
/// twelve quarter turns by default) and checks flip parity, twist sum,
/// displacement path-independence, energy-zero iff ground, and that each
/// action is injective on each BFS layer.
ScanReport reachable_invariant_scan(int depth, const std::vector<Move>& actions = fundamental_moves(),
                                    const CoefficientSet& coeffs = CoefficientSet::defaults());

}  // namespace qube
