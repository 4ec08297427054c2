#include <doctest.h>

#include "qube/oracle.hpp"

using namespace qube;

TEST_CASE("encoding is injective on small samples") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const CubeState a = scramble(rng, fundamental_moves(), 1 + i % 12).state;
    const CubeState b = scramble(rng, fundamental_moves(), 1 + i % 12).state;
    CHECK((encode(a) == encode(b)) == (a == b));
  }
}

TEST_CASE("bfs examples") {
  const auto r = bfs_solve(qube::apply(CubeState::solved(), Move::turn(Layer::F)), fundamental_moves(), 2);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(to_string(r.moves) == "F'");

  const auto z = bfs_solve(qube::apply(CubeState::solved(), parse_sequence("U D U' D'")), fundamental_moves(), 1);
  REQUIRE(z.status == SearchStatus::Found);
  CHECK(z.moves.empty());

  const auto none = bfs_solve(qube::apply(CubeState::solved(), parse_sequence("F R")), fundamental_moves(), 1);
  CHECK(none.status == SearchStatus::NotFound);

  const auto cut = bfs_solve(qube::apply(CubeState::solved(), parse_sequence("F R U B")), fundamental_moves(), 6,
                             is_solved, 50);
  CHECK(cut.status == SearchStatus::BoundExceeded);
}

TEST_CASE("depth-k scrambles solve within k, minimally for k <= 3") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const int k = 1 + i % 3;
    const Scramble sc = scramble(rng, fundamental_moves(), k);
    const auto r = bfs_solve(sc.state, fundamental_moves(), k);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.moves.size() <= static_cast<std::size_t>(k));
    CHECK(is_solved(qube::apply(sc.state, r.moves)));
    if (!r.moves.empty()) {
      const auto shorter = bfs_solve(sc.state, fundamental_moves(), static_cast<int>(r.moves.size()) - 1);
      CHECK(shorter.status == SearchStatus::NotFound);
    }
  }
}

TEST_CASE("phase goal predicates") {
  const auto k = CoefficientSet::defaults();
  const CubeState s = qube::apply(CubeState::solved(), parse_sequence("R F"));
  const auto r = bfs_solve(s, action_set(1), 3, [&](const CubeState& x) {
    return is_ground(x, PhaseHamiltonian::EdgeSpin, k);
  });
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.moves.size() == 1);
  CHECK(is_ground(qube::apply(s, r.moves), PhaseHamiltonian::EdgeSpin, k));
}

TEST_CASE("invariant scan to depth 3") {
  const ScanReport rep = reachable_invariant_scan(3);
  INFO(rep.to_text());
  CHECK(rep.ok());
  REQUIRE(rep.layer_sizes.size() == 4);
  CHECK(rep.layer_sizes[0] == 1);
  CHECK(rep.layer_sizes[1] == 12);
  CHECK(rep.layer_sizes[2] == 114);
}

TEST_CASE("scan reports violations with witnesses") {
  const std::vector<Move> actions{Move::turn(Layer::U)};
  const ScanReport ok = reachable_invariant_scan(2, actions);
  CHECK(ok.ok());
  CHECK(ok.layer_sizes == std::vector<std::size_t>{1, 1, 1});

  // Zero edge-spin couplings make flipped states look ground.
  CoefficientSet blind = CoefficientSet::defaults();
  for (auto& row : blind.j_edges) row.assign(row.size(), 0);
  for (auto& row : blind.b_edge_spin) row.assign(row.size(), 0);
  const ScanReport bad = reachable_invariant_scan(1, fundamental_moves(), blind);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations[0].check == "energy zero iff ground");
  CHECK(bad.violations[0].witness.size() == 1);
  CHECK(bad.to_text().find("FAIL") != std::string::npos);
}
