#include "qube/hamiltonian.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qube {

namespace {

using Matrix = CoefficientSet::Matrix;

Matrix filled(int rows, int cols, std::int64_t v) { return Matrix(rows, std::vector<std::int64_t>(cols, v)); }

Matrix identity(int n) {
  Matrix m = filled(n, n, 0);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix read_matrix(const std::filesystem::path& path, int rows, int cols) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file " + path.string());
  Matrix m = filled(rows, cols, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!(in >> m[r][c]))
        throw std::invalid_argument(path.string() + ": expected " + std::to_string(rows * cols) + " integers");
  std::string extra;
  if (in >> extra) throw std::invalid_argument(path.string() + ": trailing data");
  return m;
}

void check_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  bool ok = m.size() == rows;
  for (const auto& row : m) ok = ok && row.size() == cols;
  if (!ok)
    throw std::invalid_argument(std::string(name) + ": expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

void check_j(const Matrix& j, std::size_t n, const char* name) {
  check_shape(j, n, n, name);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (j[a][b] < 0) throw std::invalid_argument(std::string(name) + ": negative entry");
      if (j[a][b] != j[b][a]) throw std::invalid_argument(std::string(name) + ": not symmetric");
    }
}

void check_b(const Matrix& b, std::size_t rows, std::size_t cols, const char* name) {
  check_shape(b, rows, cols, name);
  for (const auto& row : b)
    for (auto v : row)
      if (v <= 0) throw std::invalid_argument(std::string(name) + ": entries must be positive");
}

// J^{ij} d^{lm} n_il^2 n_jm^2 + B^{il} n_il^2 over cubies first..first+count-1.
std::int64_t position_energy(const CubeState& s, int first, int count, const Matrix& j, const Matrix& b) {
  std::vector<std::array<std::int64_t, 3>> sq(count);
  for (int i = 0; i < count; ++i)
    for (int l = 0; l < 3; ++l) {
      const std::int64_t n = s.displacement(CubieId(first + i)).n[l];
      sq[i][l] = n * n;
    }
  std::int64_t e = 0;
  for (int i = 0; i < count; ++i) {
    for (int l = 0; l < 3; ++l) e += b[i][l] * sq[i][l];
    for (int k = 0; k < count; ++k) {
      if (j[i][k] == 0) continue;
      std::int64_t dot = 0;
      for (int l = 0; l < 3; ++l) dot += sq[i][l] * sq[k][l];
      e += j[i][k] * dot;
    }
  }
  return e;
}

// J^{ij} s_i^2 s_j^2 + B^i s_i^2.
std::int64_t spin_energy(const CubeState& s, int first, int count, const Matrix& j, const Matrix& b) {
  std::vector<std::int64_t> sq(count);
  for (int i = 0; i < count; ++i) {
    const std::int64_t v = s.spin_eigenvalue(CubieId(first + i));
    sq[i] = v * v;
  }
  std::int64_t e = 0;
  for (int i = 0; i < count; ++i) {
    e += b[i][0] * sq[i];
    for (int k = 0; k < count; ++k) e += j[i][k] * sq[i] * sq[k];
  }
  return e;
}

}  // namespace

PhaseHamiltonian hamiltonian_for_phase(int phase) {
  if (phase < 1 || phase > 4) throw std::invalid_argument("phase must be 1..4");
  return static_cast<PhaseHamiltonian>(phase);
}

CoefficientSet CoefficientSet::defaults() {
  return CoefficientSet{identity(kEdgeCount),       identity(kCornerCount),   filled(kEdgeCount, 3, 1),
                        filled(kCornerCount, 3, 1), filled(kEdgeCount, 1, 1), filled(kCornerCount, 1, 1)};
}

CoefficientSet CoefficientSet::from(const KeyValueConfig& cfg) {
  CoefficientSet k = defaults();
  auto path = [&](const std::string& key) {
    auto v = cfg.get(key);
    if (!v) throw std::invalid_argument("config " + key + " required");
    std::filesystem::path p(*v);
    return p.is_absolute() ? p : cfg.base_dir() / p;
  };
  const std::string jmode = cfg.get("J.mode").value_or("diagonal");
  if (jmode == "uniform") {
    k.j_edges = filled(kEdgeCount, kEdgeCount, 1);
    k.j_corners = filled(kCornerCount, kCornerCount, 1);
  } else if (jmode == "file") {
    k.j_edges = read_matrix(path("J.edges_file"), kEdgeCount, kEdgeCount);
    k.j_corners = read_matrix(path("J.corners_file"), kCornerCount, kCornerCount);
  } else if (jmode != "diagonal") {
    throw std::invalid_argument("J.mode must be diagonal, uniform or file");
  }
  const std::string bmode = cfg.get("B.mode").value_or("ones");
  if (bmode == "file") {
    k.b_edge_position = read_matrix(path("B.edge_position_file"), kEdgeCount, 3);
    k.b_corner_position = read_matrix(path("B.corner_position_file"), kCornerCount, 3);
    k.b_edge_spin = read_matrix(path("B.edge_spin_file"), kEdgeCount, 1);
    k.b_corner_spin = read_matrix(path("B.corner_spin_file"), kCornerCount, 1);
  } else if (bmode != "ones") {
    throw std::invalid_argument("B.mode must be ones or file");
  }
  k.validate();
  return k;
}

void CoefficientSet::validate() const {
  check_j(j_edges, kEdgeCount, "J edges");
  check_j(j_corners, kCornerCount, "J corners");
  check_b(b_edge_position, kEdgeCount, 3, "B edge position");
  check_b(b_corner_position, kCornerCount, 3, "B corner position");
  check_b(b_edge_spin, kEdgeCount, 1, "B edge spin");
  check_b(b_corner_spin, kCornerCount, 1, "B corner spin");
}

std::int64_t energy(const CubeState& s, PhaseHamiltonian which, const CoefficientSet& k) {
  switch (which) {
    case PhaseHamiltonian::EdgeSpin: return spin_energy(s, 1, kEdgeCount, k.j_edges, k.b_edge_spin);
    case PhaseHamiltonian::CornerSpin: return spin_energy(s, 13, kCornerCount, k.j_corners, k.b_corner_spin);
    case PhaseHamiltonian::CornerPosition:
      return position_energy(s, 13, kCornerCount, k.j_corners, k.b_corner_position);
    case PhaseHamiltonian::EdgePosition: return position_energy(s, 1, kEdgeCount, k.j_edges, k.b_edge_position);
  }
  throw std::invalid_argument("unknown Hamiltonian");
}

std::int64_t total_energy(const CubeState& s, const CoefficientSet& k) {
  std::int64_t e = 0;
  for (int p = 1; p <= 4; ++p) e += energy(s, static_cast<PhaseHamiltonian>(p), k);
  return e;
}

bool is_ground(const CubeState& s, PhaseHamiltonian which, const CoefficientSet& k) { return energy(s, which, k) == 0; }

double reward(const CubeState& next, PhaseHamiltonian which, const CoefficientSet& k, double premium) {
  const std::int64_t e = energy(next, which, k);
  return e == 0 ? premium : -static_cast<double>(e);
}

}  // namespace qube
