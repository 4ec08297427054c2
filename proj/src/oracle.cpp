#include "qube/oracle.hpp"

#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qube {

namespace {

class BitPacker {
 public:
  void put(std::uint64_t v, int bits) {
    for (int i = 0; i < bits; ++i, ++pos_)
      if ((v >> i) & 1u) key_.words[pos_ / 64] |= std::uint64_t{1} << (pos_ % 64);
  }
  StateKey key() const { return key_; }

 private:
  StateKey key_;
  int pos_ = 0;
};

struct Node {
  CubeState state;
  std::int64_t parent;
  int move;
  int depth;
};

MoveSequence path_to(const std::vector<Node>& nodes, std::int64_t i, const std::vector<Move>& actions) {
  MoveSequence rev;
  for (; nodes[i].parent >= 0; i = nodes[i].parent) rev.push_back(actions[nodes[i].move]);
  return MoveSequence(rev.rbegin(), rev.rend());
}

bool all_home(const CubeState& s, int first, int last) {
  for (int i = first; i <= last; ++i)
    if (s.occupant(SlotId(i)).value != i) return false;
  return true;
}

bool all_oriented(const CubeState& s, int first, int last) {
  for (int i = first; i <= last; ++i)
    if (s.spin_residue(CubieId(i)) != 0) return false;
  return true;
}

}  // namespace

StateKey encode(const CubeState& s) {
  BitPacker p;
  for (int slot = 1; slot <= kCubieCount; ++slot) p.put(static_cast<std::uint64_t>(s.occupant(SlotId(slot)).index()), 5);
  for (int c = 1; c <= kCubieCount; ++c) p.put(static_cast<std::uint64_t>(s.spin_residue(CubieId(c))), c <= kEdgeCount ? 1 : 2);
  for (int c = 1; c <= kCubieCount; ++c)
    for (int v : s.displacement(CubieId(c)).n) p.put(static_cast<std::uint64_t>(v + 3) & 7u, 3);
  return p.key();
}

std::size_t StateKeyHash::operator()(const StateKey& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto w : k.words) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

SearchResult bfs_solve(const CubeState& start, const std::vector<Move>& actions, int max_depth,
                       const std::function<bool(const CubeState&)>& goal, std::size_t node_budget) {
  SearchResult res;
  std::vector<Transform> tf;
  for (const Move& m : actions) tf.push_back(transform_of(m));
  std::vector<Node> nodes{{start, -1, -1, 0}};
  std::unordered_set<StateKey, StateKeyHash> seen{encode(start)};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (goal(nodes[i].state)) {
      res.status = SearchStatus::Found;
      res.moves = path_to(nodes, static_cast<std::int64_t>(i), actions);
      res.nodes = nodes.size();
      return res;
    }
    if (nodes[i].depth >= max_depth) continue;
    for (std::size_t a = 0; a < tf.size(); ++a) {
      CubeState next = apply(nodes[i].state, tf[a]);
      if (!seen.insert(encode(next)).second) continue;
      if (nodes.size() >= node_budget) {
        res.status = SearchStatus::BoundExceeded;
        res.nodes = nodes.size();
        return res;
      }
      nodes.push_back({std::move(next), static_cast<std::int64_t>(i), static_cast<int>(a), nodes[i].depth + 1});
    }
  }
  res.status = SearchStatus::NotFound;
  res.nodes = nodes.size();
  return res;
}

std::string ScanReport::to_text() const {
  std::ostringstream os;
  os << "invariant scan to depth " << depth << ": " << states << " distinct states\n";
  for (std::size_t d = 0; d < layer_sizes.size(); ++d) os << "  depth " << d << ": " << layer_sizes[d] << "\n";
  for (const auto& c : checks) {
    int n = 0;
    for (const auto& v : violations) n += v.check == c;
    os << (n ? "FAIL  " : "PASS  ") << c << (n ? "  (" + std::to_string(n) + " violations)" : "") << "\n";
  }
  for (std::size_t i = 0; i < violations.size() && i < 10; ++i)
    os << "  " << violations[i].check << ": " << violations[i].detail << " witness [" << to_string(violations[i].witness)
       << "]\n";
  return os.str();
}

ScanReport reachable_invariant_scan(int depth, const std::vector<Move>& actions, const CoefficientSet& coeffs) {
  ScanReport rep;
  rep.depth = depth;
  rep.checks = {"valid state", "even edge flips", "corner twist sum 0 mod 3", "displacement path independence",
                "energy zero iff ground", "actions injective per layer"};
  std::vector<Transform> tf;
  for (const Move& m : actions) tf.push_back(transform_of(m));

  std::vector<Node> nodes{{CubeState::solved(), -1, -1, 0}};
  std::unordered_set<StateKey, StateKeyHash> seen{encode(nodes[0].state)};
  // displacement first seen for (cubie, slot), with the node that showed it
  std::map<std::pair<int, int>, std::pair<Displacement, std::int64_t>> disp_at;

  auto violate = [&](const char* check, std::int64_t node, std::string detail) {
    rep.violations.push_back({check, path_to(nodes, node, actions), std::move(detail)});
  };

  auto check_state = [&](std::int64_t i) {
    const CubeState& s = nodes[i].state;
    if (!s.is_valid()) violate("valid state", i, "occupancy or spin out of range");
    if (s.flipped_edge_count() % 2) violate("even edge flips", i, std::to_string(s.flipped_edge_count()) + " flipped");
    if (s.corner_twist_sum_mod3()) violate("corner twist sum 0 mod 3", i, "sum " + std::to_string(s.corner_twist_sum_mod3()));
    for (int c = 1; c <= kCubieCount; ++c) {
      const int slot = s.slot_of(CubieId(c)).value;
      auto [it, fresh] = disp_at.try_emplace({c, slot}, s.displacement(CubieId(c)), i);
      if (!fresh && !(it->second.first == s.displacement(CubieId(c))))
        violate("displacement path independence", i,
                "cubie " + std::to_string(c) + " in slot " + std::to_string(slot) + " differs from witness [" +
                    to_string(path_to(nodes, it->second.second, actions)) + "]");
    }
    const std::array<bool, 4> direct{all_oriented(s, 1, 12), all_oriented(s, 13, 20), all_home(s, 13, 20),
                                     all_home(s, 1, 12)};
    for (int p = 1; p <= 4; ++p)
      if ((energy(s, hamiltonian_for_phase(p), coeffs) == 0) != direct[p - 1])
        violate("energy zero iff ground", i, "phase " + std::to_string(p) + " Hamiltonian");
    if ((total_energy(s, coeffs) == 0) != is_solved(s)) violate("energy zero iff ground", i, "total Hamiltonian");
  };

  check_state(0);
  std::size_t layer_begin = 0;
  rep.layer_sizes.push_back(1);
  for (int d = 0; d < depth; ++d) {
    const std::size_t layer_end = nodes.size();
    for (std::size_t a = 0; a < tf.size(); ++a) {
      std::unordered_set<StateKey, StateKeyHash> images;
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        CubeState next = apply(nodes[i].state, tf[a]);
        const StateKey key = encode(next);
        if (!images.insert(key).second)
          violate("actions injective per layer", static_cast<std::int64_t>(i), "collision under " + to_string(actions[a]));
        if (seen.insert(key).second) {
          nodes.push_back({std::move(next), static_cast<std::int64_t>(i), static_cast<int>(a), d + 1});
          check_state(static_cast<std::int64_t>(nodes.size() - 1));
        }
      }
    }
    rep.layer_sizes.push_back(nodes.size() - layer_end);
    layer_begin = layer_end;
  }
  rep.states = nodes.size();
  return rep;
}

}  // namespace qube
