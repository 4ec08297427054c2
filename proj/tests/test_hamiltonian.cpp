#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qube/group.hpp"
#include "qube/hamiltonian.hpp"

using namespace qube;

namespace {
const CoefficientSet K = CoefficientSet::defaults();
constexpr PhaseHamiltonian kAll[] = {PhaseHamiltonian::EdgeSpin, PhaseHamiltonian::CornerSpin,
                                     PhaseHamiltonian::CornerPosition, PhaseHamiltonian::EdgePosition};
}  // namespace

TEST_CASE("solved is ground for every Hamiltonian") {
  for (auto h : kAll) {
    CHECK(energy(CubeState::solved(), h, K) == 0);
    CHECK(is_ground(CubeState::solved(), h, K));
  }
  CHECK(total_energy(CubeState::solved(), K) == 0);
}

TEST_CASE("single defects, default coefficients") {
  CubeState s = CubeState::solved();
  s.set_spin_residue(CubieId(3), 1);
  CHECK(energy(s, PhaseHamiltonian::EdgeSpin, K) == 2);
  CHECK(reward(s, PhaseHamiltonian::EdgeSpin, K, 5000) == -2.0);

  CubeState c = CubeState::solved();
  c.set_displacement(CubieId(13), Displacement{{1, 0, 0}});
  CHECK(energy(c, PhaseHamiltonian::CornerPosition, K) == 2);

  CubeState t = CubeState::solved();
  t.set_spin_residue(CubieId(15), 2);
  CHECK(energy(t, PhaseHamiltonian::CornerSpin, K) == 2);

  CubeState e = CubeState::solved();
  e.set_displacement(CubieId(1), Displacement{{1, 0, 1}});
  CHECK(energy(e, PhaseHamiltonian::EdgePosition, K) == 4);
  e.set_displacement(CubieId(1), Displacement{{0, 0, 2}});
  CHECK(energy(e, PhaseHamiltonian::EdgePosition, K) == 16 + 4);
}

TEST_CASE("energies after F") {
  const CubeState s = qube::apply(CubeState::solved(), Move::turn(Layer::F));
  CHECK(energy(s, PhaseHamiltonian::EdgeSpin, K) == 8);
  CHECK(energy(s, PhaseHamiltonian::CornerSpin, K) == 8);
  CHECK(energy(s, PhaseHamiltonian::CornerPosition, K) == 8);
  CHECK(energy(s, PhaseHamiltonian::EdgePosition, K) == 16);
  CHECK(is_ground(s, PhaseHamiltonian::EdgeSpin, K) == false);
}

TEST_CASE("U keeps spins ground, moves positions") {
  const CubeState s = qube::apply(CubeState::solved(), Move::turn(Layer::U, true));
  CHECK(energy(s, PhaseHamiltonian::EdgeSpin, K) == 0);
  CHECK(energy(s, PhaseHamiltonian::CornerSpin, K) == 0);
  CHECK(is_ground(s, PhaseHamiltonian::CornerSpin, K));
  CHECK(energy(s, PhaseHamiltonian::CornerPosition, K) > 0);
  CHECK(total_energy(s, K) > 0);
  CHECK(total_energy(qube::apply(s, Move::turn(Layer::U)), K) == 0);
}

TEST_CASE("reward") {
  CHECK(reward(CubeState::solved(), PhaseHamiltonian::EdgeSpin, K, 5000) == 5000.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const CubeState s = scramble(rng, fundamental_moves(), 1 + i % 20).state;
    for (auto h : kAll) {
      const double r = reward(s, h, K, 5000);
      const double sum = r + static_cast<double>(energy(s, h, K));
      CHECK((sum == 0.0 || sum == 5000.0));
      if (!is_ground(s, h, K)) CHECK(r < 0);
    }
  }
}

TEST_CASE("later action sets preserve earlier ground states") {
  std::mt19937_64 rng(9);
  for (int phase = 2; phase <= 4; ++phase)
    for (int i = 0; i < 40; ++i) {
      const CubeState s = scramble(rng, action_set(phase), 1 + i).state;
      for (int p = 1; p < phase; ++p) CHECK(is_ground(s, hamiltonian_for_phase(p), K));
    }
}

TEST_CASE("coefficient modes") {
  KeyValueConfig cfg;
  cfg.set("J.mode", "uniform");
  const CoefficientSet u = CoefficientSet::from(cfg);
  CubeState s = CubeState::solved();
  s.set_spin_residue(CubieId(1), 1);
  s.set_spin_residue(CubieId(2), 1);
  // uniform J couples the two flips: 4 J terms + 2 B terms
  CHECK(energy(s, PhaseHamiltonian::EdgeSpin, u) == 6);
  CHECK(energy(s, PhaseHamiltonian::EdgeSpin, K) == 4);

  cfg.set("J.mode", "bogus");
  CHECK_THROWS_AS(CoefficientSet::from(cfg), std::invalid_argument);

  CoefficientSet bad = K;
  bad.b_edge_spin[0][0] = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = K;
  bad.j_corners[0][1] = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = K;
  bad.j_edges.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("coefficients from files") {
  const auto dir = std::filesystem::temp_directory_path() / "qube_coeff_test";
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, int rows, int cols, int v, bool diag) {
    std::ofstream f(dir / name);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) f << (diag ? (r == c ? v : 0) : v) << ' ';
      f << '\n';
    }
  };
  write("je.txt", 12, 12, 3, true);
  write("jc.txt", 8, 8, 1, true);
  {
    std::ofstream f(dir / "q.cfg");
    f << "J.mode = file\nJ.edges_file = je.txt\nJ.corners_file = jc.txt\n";
  }
  const CoefficientSet k = CoefficientSet::from(KeyValueConfig::load(dir / "q.cfg"));
  CubeState s = CubeState::solved();
  s.set_spin_residue(CubieId(4), 1);
  CHECK(energy(s, PhaseHamiltonian::EdgeSpin, k) == 4);

  write("je.txt", 12, 11, 3, true);
  CHECK_THROWS_AS(CoefficientSet::from(KeyValueConfig::load(dir / "q.cfg")), std::invalid_argument);
  std::filesystem::remove_all(dir);
}
