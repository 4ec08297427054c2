#include "qube/cube.hpp"

#include <sstream>
#include <stdexcept>

namespace qube {

CubeState CubeState::solved() {
  CubeState s;
  for (int i = 0; i < kCubieCount; ++i) s.occupancy_[i] = static_cast<std::uint8_t>(i);
  return s;
}

SlotId CubeState::slot_of(CubieId cubie) const {
  for (int i = 0; i < kCubieCount; ++i)
    if (occupancy_[i] == cubie.index()) return SlotId(i + 1);
  throw std::logic_error("cubie not placed");
}

EdgeOrientation CubeState::edge_spin(CubieId cubie) const {
  if (!cubie.is_edge()) throw std::invalid_argument("edge_spin on corner cubie");
  return spin_[cubie.index()] ? EdgeOrientation::Flipped : EdgeOrientation::Oriented;
}

CornerOrientation CubeState::corner_spin(CubieId cubie) const {
  if (!cubie.is_corner()) throw std::invalid_argument("corner_spin on edge cubie");
  return corner_from_residue(spin_[cubie.index()]);
}

int CubeState::spin_eigenvalue(CubieId cubie) const {
  return cubie.is_edge() ? eigenvalue(edge_spin(cubie)) : eigenvalue(corner_spin(cubie));
}

void CubeState::set_spin_residue(CubieId cubie, int r) {
  const int mod = cubie.is_edge() ? 2 : 3;
  spin_[cubie.index()] = static_cast<std::uint8_t>(((r % mod) + mod) % mod);
}

bool CubeState::is_valid() const {
  std::array<bool, kCubieCount> seen{};
  for (int slot = 0; slot < kCubieCount; ++slot) {
    const int c = occupancy_[slot];
    if (c >= kCubieCount || seen[c]) return false;
    seen[c] = true;
    if ((slot < kEdgeCount) != (c < kEdgeCount)) return false;
  }
  for (int c = 0; c < kCubieCount; ++c)
    if (spin_[c] >= (c < kEdgeCount ? 2 : 3)) return false;
  return true;
}

int CubeState::flipped_edge_count() const {
  int n = 0;
  for (int c = 0; c < kEdgeCount; ++c) n += spin_[c];
  return n;
}

int CubeState::corner_twist_sum_mod3() const {
  int sum = 0;
  for (int c = kEdgeCount; c < kCubieCount; ++c) sum += spin_[c];
  return sum % 3;
}

int observation_size(int phase) {
  switch (phase) {
    case 1: return 12;
    case 2: return 16;
    case 3: return 24;
    case 4: return 36;
    default: throw std::invalid_argument("phase must be 1..4, got " + std::to_string(phase));
  }
}

std::vector<double> observe(const CubeState& s, int phase) {
  std::vector<double> out;
  out.reserve(observation_size(phase));
  switch (phase) {
    case 1:
      for (int slot = 1; slot <= kEdgeCount; ++slot)
        out.push_back(s.spin_eigenvalue(s.occupant(SlotId(slot))));
      break;
    case 2:
      // One indicator pair per corner slot: (Plus, Minus).
      for (int slot = 13; slot <= 20; ++slot) {
        const int e = s.spin_eigenvalue(s.occupant(SlotId(slot)));
        out.push_back(e == 1 ? 1.0 : 0.0);
        out.push_back(e == -1 ? 1.0 : 0.0);
      }
      break;
    case 3:
      for (int c = 13; c <= 20; ++c)
        for (int v : s.displacement(CubieId(c)).n) out.push_back(v);
      break;
    case 4:
      for (int c = 1; c <= 12; ++c)
        for (int v : s.displacement(CubieId(c)).n) out.push_back(v);
      break;
  }
  return out;
}

bool is_solved(const CubeState& s) {
  for (int c = 1; c <= kCubieCount; ++c)
    if (!s.displacement(CubieId(c)).is_zero() || s.spin_residue(CubieId(c)) != 0) return false;
  return true;
}

namespace {

std::string cell(const CubeState& s, int slot) {
  const CubieId c = s.occupant(SlotId(slot));
  std::string mark = " ";
  if (c.is_edge()) {
    if (s.edge_spin(c) == EdgeOrientation::Flipped) mark = "~";
  } else {
    auto o = s.corner_spin(c);
    if (o == CornerOrientation::Plus) mark = "+";
    if (o == CornerOrientation::Minus) mark = "-";
  }
  std::string id = std::to_string(c.value);
  if (id.size() < 2) id = " " + id;
  return id + mark;
}

}  // namespace

std::string render_net(const CubeState& s) {
  // Layers bottom to top; each row lists the slots of that layer.
  static const std::array<std::pair<const char*, std::array<int, 8>>, 3> rows{{
      {"D ", {13, 1, 14, 2, 15, 3, 16, 4}},
      {"E ", {9, 11, 12, 10, 0, 0, 0, 0}},
      {"U ", {17, 5, 18, 6, 19, 7, 20, 8}},
  }};
  std::ostringstream os;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    os << it->first << "|";
    for (int slot : it->second) {
      if (slot == 0) break;
      os << " " << slot << ":" << cell(s, slot);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace qube

std::size_t std::hash<qube::CubeState>::operator()(const qube::CubeState& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (int i = 1; i <= qube::kCubieCount; ++i) {
    mix(static_cast<std::size_t>(s.occupant(qube::SlotId(i)).value));
    mix(static_cast<std::size_t>(s.spin_residue(qube::CubieId(i))));
  }
  return h;
}
