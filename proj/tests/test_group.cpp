#include <doctest.h>

#include <set>
#include <stdexcept>

#include "qube/group.hpp"

using namespace qube;

namespace {

CubeState after(const char* moves) { return qube::apply(CubeState::solved(), parse_sequence(moves)); }

CubeState random_state(std::uint64_t seed, int len = 40) {
  std::mt19937_64 rng(seed);
  return scramble(rng, fundamental_moves(), len).state;
}

const CycleEntry& entry(Layer l, int slot) {
  for (const auto& cyc : generator_spec(l).cycles)
    for (const auto& e : cyc)
      if (e.slot == slot) return e;
  throw std::logic_error("slot not in table");
}

}  // namespace

TEST_CASE("F table transcription") {
  const auto& f = generator_spec(Layer::F);
  REQUIRE(f.cycles.size() == 2);
  const int edge_order[] = {1, 9, 5, 11};
  const int corner_order[] = {13, 16, 18, 17};
  for (int k = 0; k < 4; ++k) {
    CHECK(f.cycles[0][k].slot == edge_order[k]);
    CHECK(f.cycles[1][k].slot == corner_order[k]);
    CHECK(f.cycles[0][k].spin == SpinAction::EdgeFlip);
  }
  CHECK(entry(Layer::F, 1).translation == Vec3{1, 0, 1});
  CHECK(entry(Layer::F, 9).translation == Vec3{-1, 0, 1});
  CHECK(entry(Layer::F, 5).translation == Vec3{-1, 0, -1});
  CHECK(entry(Layer::F, 11).translation == Vec3{1, 0, -1});
  CHECK(entry(Layer::F, 13).translation == Vec3{1, 0, 0});
  CHECK(entry(Layer::F, 13).spin == SpinAction::CornerC);
  CHECK(entry(Layer::F, 16).translation == Vec3{0, 0, 1});
  CHECK(entry(Layer::F, 16).spin == SpinAction::CornerA);
  CHECK(entry(Layer::F, 17).translation == Vec3{0, 0, -1});
  CHECK(entry(Layer::F, 17).spin == SpinAction::CornerA);
  CHECK(entry(Layer::F, 18).translation == Vec3{-1, 0, 0});
  CHECK(entry(Layer::F, 18).spin == SpinAction::CornerC);
}

TEST_CASE("other face tables, spot entries") {
  CHECK(entry(Layer::D, 1).translation == Vec3{-1, -1, 0});
  CHECK(entry(Layer::D, 15).translation == Vec3{0, 1, 0});
  CHECK(entry(Layer::U, 5).translation == Vec3{1, -1, 0});
  CHECK(entry(Layer::U, 20).translation == Vec3{0, 1, 0});
  CHECK(entry(Layer::L, 10).translation == Vec3{0, 1, 1});
  CHECK(entry(Layer::L, 19).spin == SpinAction::CornerC);
  CHECK(entry(Layer::R, 13).spin == SpinAction::CornerA);
  CHECK(entry(Layer::R, 12).translation == Vec3{0, 1, -1});
  CHECK(entry(Layer::B, 12).translation == Vec3{1, 0, 1});
  CHECK(entry(Layer::B, 20).spin == SpinAction::CornerC);
  CHECK(entry(Layer::B, 15).translation == Vec3{-1, 0, 0});
}

TEST_CASE("table checksum is pinned") {
  // Any edit to the generator or slice tables must update this value.
  CHECK(table_checksum() == 2456045377301829269ull);
}

TEST_CASE("spin actions") {
  CHECK(spin_delta(SpinAction::CornerA) == 1);
  CHECK(spin_delta(SpinAction::CornerC) == 2);
  CHECK((spin_delta(SpinAction::CornerA) + spin_delta(SpinAction::CornerC)) % 3 == 0);
  CHECK((3 * spin_delta(SpinAction::CornerA)) % 3 == 0);
  CHECK((2 * spin_delta(SpinAction::EdgeFlip)) % 2 == 0);
  CHECK(inverse(SpinAction::CornerA) == SpinAction::CornerC);
}

TEST_CASE("F on solved") {
  const CubeState s = after("F");
  CHECK(s.displacement(CubieId(13)).n == std::array<int, 3>{1, 0, 0});
  CHECK(s.corner_spin(CubieId(13)) == CornerOrientation::Minus);
  CHECK(s.displacement(CubieId(1)).n == std::array<int, 3>{1, 0, 1});
  CHECK(s.edge_spin(CubieId(1)) == EdgeOrientation::Flipped);
  CHECK(s.occupant(SlotId(9)) == CubieId(1));
  CHECK(s.occupant(SlotId(16)) == CubieId(13));
  CHECK(s.is_valid());
}

TEST_CASE("order and inverses on random states") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CubeState s = random_state(seed);
    for (const Move& g : fundamental_moves()) {
      CHECK(qube::apply(qube::apply(s, g), inverse(g)) == s);
      CHECK(qube::apply(s, MoveSequence{g, g, g, g}) == s);
    }
  }
}

TEST_CASE("sequence inverse") {
  CHECK(inverse(MoveSequence{Move::turn(Layer::F)}) == MoveSequence{Move::turn(Layer::F, true)});
  CHECK(to_string(inverse(parse_sequence("U D2"))) == "D2 U'");
  std::mt19937_64 rng(7);
  const Scramble sc = scramble(rng, fundamental_moves(), 50);
  const CubeState back = qube::apply(sc.state, inverse(sc.moves));
  CHECK(is_solved(back));
  CHECK(back == CubeState::solved());
}

TEST_CASE("macro inverse commutes with expansion") {
  for (const char* tok : {"[U,D]", "[R,F]", "T2", "C3{U,D,Mx}", "U>C4{L,R,Mz'}", "F2"}) {
    const Move m = parse_move(tok);
    CHECK(transform_of(expand_macro(inverse(m))) == transform_of(inverse(expand_macro(m))));
    CHECK(transform_of(m).then(transform_of(inverse(m))).is_identity());
  }
  CHECK_THROWS_AS(expand_macro(Move::turn(Layer::U)), std::invalid_argument);
}

TEST_CASE("U and D commute") {
  CHECK(transform_of(Move::commutator(Layer::U, Layer::D)).is_identity());
  const CubeState s = random_state(3);
  CHECK(qube::apply(s, parse_sequence("U D")) == qube::apply(s, parse_sequence("D U")));
}

TEST_CASE("squares preserve spins") {
  for (int f = 0; f < kFaceCount; ++f) {
    const Transform t = transform_of(Move::square(static_cast<Layer>(f)));
    for (int a = 0; a < kCubieCount; ++a) CHECK(t.twist[a] == 0);
  }
}

TEST_CASE("orientation classes") {
  const CubeState l = after("L");
  CHECK(l.flipped_edge_count() == 0);
  int twisted = 0;
  for (int c = 13; c <= 20; ++c) twisted += l.spin_residue(CubieId(c)) != 0;
  CHECK(twisted == 4);
  std::mt19937_64 rng(11);
  const std::vector<Move> ud{Move::turn(Layer::U), Move::turn(Layer::D)};
  const CubeState s = scramble(rng, ud, 30).state;
  for (int c = 1; c <= 20; ++c) CHECK(s.spin_residue(CubieId(c)) == 0);
}

TEST_CASE("slices move four edges by straight two-steps") {
  for (Layer m : {Layer::Mx, Layer::My, Layer::Mz}) {
    const Transform t = transform_of(Move::turn(m));
    CHECK(t.moved_slots().size() == 4);
    for (int a : t.moved_slots()) {
      CHECK(a <= 12);
      int nz = 0, norm = 0;
      for (int v : t.shift[a - 1]) {
        nz += v != 0;
        norm += v * v;
      }
      CHECK(nz == 1);
      CHECK(norm == 4);
      CHECK(t.twist[a - 1] == 0);
    }
    CHECK(transform_of(MoveSequence(4, Move::turn(m))).is_identity());
  }
}

TEST_CASE("C3 and C4 are inverse pure 3-cycles") {
  const Move c3 = parse_move("C3{U,D,Mx}");
  const Transform t = transform_of(c3);
  const auto moved = t.moved_slots();
  REQUIRE(moved.size() == 3);
  for (int s : moved) CHECK(s <= 12);
  const CubeState s = qube::apply(CubeState::solved(), c3);
  for (int c = 1; c <= 20; ++c) CHECK(s.spin_residue(CubieId(c)) == 0);
  CHECK(t.then(t).then(t).is_identity());
  const Transform t4 = transform_of(parse_move("C4{U,D,Mx}"));
  CHECK(t4.moved_slots() == moved);
  CHECK(t4 == t.inverse());
  CHECK(t4 != t);
}

TEST_CASE("phase-4 action set") {
  const auto& acts = action_set(4);
  CHECK(acts.size() == 56);
  std::set<std::vector<int>> supports;
  std::set<int> touched;
  for (const Move& m : acts) {
    const Transform t = transform_of(m);
    const auto moved = t.moved_slots();
    REQUIRE(moved.size() == 3);
    for (int a = 0; a < kCubieCount; ++a) CHECK(t.twist[a] == 0);
    supports.insert(moved);
    touched.insert(moved.begin(), moved.end());
    // every action's inverse is in the set too
    bool has_inverse = false;
    for (const Move& n : acts) has_inverse = has_inverse || transform_of(n) == t.inverse();
    CHECK(has_inverse);
  }
  CHECK(touched.size() == 12);
}

TEST_CASE("action set sizes") {
  CHECK(action_set(1).size() == 12);
  CHECK(action_set(2).size() == 3);
  CHECK(action_set(3).size() == 8);
  CHECK_THROWS_AS(action_set(0), std::invalid_argument);
}

TEST_CASE("T2 macro") {
  const Transform t = transform_of(Move::corner_twist());
  for (int a = 12; a < 20; ++a) CHECK(t.dest[a] == a);
  const CubeState s = after("T2");
  CHECK(s.flipped_edge_count() == 0);
  CHECK(s.corner_spin(CubieId(13)) == CornerOrientation::Plus);
  CHECK(s.corner_spin(CubieId(14)) == CornerOrientation::Minus);
  CHECK(s.corner_spin(CubieId(16)) == CornerOrientation::Plus);
  CHECK(s.corner_spin(CubieId(20)) == CornerOrientation::Minus);
  CHECK(to_string(expand_macro(Move::corner_twist())) == "R D R' D' R D R' D'");
}

TEST_CASE("notation round trip and errors") {
  const char* text = "U U' D2 Mx My' [R,D] T2 T2' C3{U,D,Mx} C4{F,B,Mz'} L>C3{L,R,My}";
  CHECK(to_string(parse_sequence(text)) == text);
  CHECK_THROWS_AS(parse_move("u"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move("U3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move("Mx2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move("C3{U,D}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move("[U,Mx]"), std::invalid_argument);
  CHECK(parse_sequence("  ").empty());
}

TEST_CASE("scramble") {
  std::mt19937_64 rng(5);
  const Scramble one = scramble(rng, fundamental_moves(), 1);
  REQUIRE(one.moves.size() == 1);
  CHECK(one.state == qube::apply(CubeState::solved(), one.moves[0]));
  CHECK_THROWS(scramble(rng, fundamental_moves(), 0));
  CHECK_THROWS(scramble(rng, {}, 3));
  for (int i = 0; i < 50; ++i) {
    const CubeState s = scramble(rng, action_set(1), 30).state;
    CHECK(s.flipped_edge_count() % 2 == 0);
    CHECK(s.corner_twist_sum_mod3() == 0);
  }
}

TEST_CASE("group property report passes") {
  const GroupReport rep = group_property_report();
  INFO(rep.to_text());
  CHECK(rep.all_passed());
  CHECK(rep.checks.size() >= 6 * 6);
}
