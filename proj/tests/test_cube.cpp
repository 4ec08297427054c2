#include <doctest.h>

#include <stdexcept>

#include "qube/group.hpp"

using namespace qube;

namespace {
CubeState after(const char* moves) { return qube::apply(CubeState::solved(), parse_sequence(moves)); }
}  // namespace

TEST_CASE("solved state") {
  const CubeState s = CubeState::solved();
  CHECK(s.is_valid());
  for (int c = 1; c <= 20; ++c) {
    CHECK(s.displacement(CubieId(c)).is_zero());
    CHECK(s.occupant(SlotId(c)) == CubieId(c));
  }
  CHECK(s.edge_spin(CubieId(1)) == EdgeOrientation::Oriented);
  CHECK(s.spin_eigenvalue(CubieId(1)) == 0);
  CHECK(s.corner_spin(CubieId(13)) == CornerOrientation::Zero);
  CHECK(is_solved(s));
}

TEST_CASE("id partition") {
  CHECK(CubieId(12).is_edge());
  CHECK_FALSE(CubieId(12).is_corner());
  CHECK(CubieId(13).is_corner());
  CHECK(SlotId(20).is_corner());
  CHECK_THROWS(CubeState::solved().edge_spin(CubieId(13)));
  CHECK_THROWS(CubeState::solved().corner_spin(CubieId(1)));
}

TEST_CASE("corner residue mapping") {
  CHECK(residue(CornerOrientation::Plus) == 1);
  CHECK(residue(CornerOrientation::Minus) == 2);
  CHECK(corner_from_residue(2) == CornerOrientation::Minus);
  CHECK(corner_from_residue(-1) == CornerOrientation::Minus);
  CHECK(corner_from_residue(4) == CornerOrientation::Plus);
}

TEST_CASE("observation sizes") {
  const int want[] = {12, 16, 24, 36};
  for (int p = 1; p <= 4; ++p) {
    CHECK(observation_size(p) == want[p - 1]);
    CHECK(observe(CubeState::solved(), p).size() == static_cast<std::size_t>(want[p - 1]));
    for (double v : observe(CubeState::solved(), p)) CHECK(v == 0.0);
  }
  CHECK_THROWS_AS(observe(CubeState::solved(), 0), std::invalid_argument);
  CHECK_THROWS_AS(observe(CubeState::solved(), 5), std::invalid_argument);
}

TEST_CASE("observe after F") {
  const CubeState s = after("F");
  const auto o1 = observe(s, 1);
  int minus = 0;
  for (double v : o1) minus += v == -1.0;
  CHECK(minus == 4);
  // the flipped cubies 1,5,9,11 sit in the F slots 9,11,1,5
  for (int slot : {1, 5, 9, 11}) CHECK(o1[slot - 1] == -1.0);
  for (int c : {1, 5, 9, 11}) CHECK(s.edge_spin(CubieId(c)) == EdgeOrientation::Flipped);

  const auto o3 = observe(s, 3);
  int moved = 0;
  for (int k = 0; k < 8; ++k) {
    const int sq = static_cast<int>(o3[3 * k] * o3[3 * k] + o3[3 * k + 1] * o3[3 * k + 1] + o3[3 * k + 2] * o3[3 * k + 2]);
    if (sq) {
      ++moved;
      CHECK(sq == 1);
    }
  }
  CHECK(moved == 4);
}

TEST_CASE("phase-2 observation is a (plus, minus) pair per corner slot") {
  // T2 twists slots 13:+1 14:-1 16:+1 20:-1
  const auto o = observe(after("T2"), 2);
  const std::vector<double> want{1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1};
  CHECK(o == want);
  // U carries the twisted corner of slot 20 on to slot 17
  const auto u = observe(after("T2 U"), 2);
  CHECK(u[2 * (17 - 13) + 1] == 1.0);
  CHECK(u[2 * (20 - 13) + 1] == 0.0);
}

TEST_CASE("phase-1 observation is per slot") {
  // F then U: the flipped edges in slots 5 and 11 are carried by U / stay.
  const CubeState s = after("F U");
  const auto o = observe(s, 1);
  for (int slot = 1; slot <= 12; ++slot)
    CHECK(o[slot - 1] == s.spin_eigenvalue(s.occupant(SlotId(slot))));
}

TEST_CASE("is_solved") {
  CHECK_FALSE(is_solved(after("F")));
  CHECK(is_solved(after("F F F F")));
  CHECK(is_solved(after("R U R' U'  U R U' R'")));
}

TEST_CASE("state hash and equality") {
  std::hash<CubeState> h;
  CHECK(h(after("F U")) == h(after("F U")));
  CHECK(after("F U") == after("F U"));
  CHECK_FALSE(after("F U") == after("U F"));
}

TEST_CASE("net diagram lists every slot") {
  const std::string net = render_net(after("F"));
  for (int slot = 1; slot <= 20; ++slot) CHECK(net.find(" " + std::to_string(slot) + ":") != std::string::npos);
  CHECK(net.find('~') != std::string::npos);
  CHECK(net.find('-') != std::string::npos);
}
