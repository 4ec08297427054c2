#include "qube/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qube {

namespace {

constexpr SpinAction I = SpinAction::Identity;
constexpr SpinAction X = SpinAction::EdgeFlip;
constexpr SpinAction A = SpinAction::CornerA;
constexpr SpinAction C = SpinAction::CornerC;

using Cycle = std::array<CycleEntry, 4>;

// Slices carry no spin action and move their edges by straight two-steps
// (pos(next) - pos(slot)), consistent with the face tables.
const std::array<GeneratorSpec, 9> kTables{{
    {Layer::U,
     {Cycle{{{5, {1, -1, 0}, I}, {6, {-1, -1, 0}, I}, {7, {-1, 1, 0}, I}, {8, {1, 1, 0}, I}}},
      Cycle{{{17, {1, 0, 0}, I}, {18, {0, -1, 0}, I}, {19, {-1, 0, 0}, I}, {20, {0, 1, 0}, I}}}}},
    {Layer::D,
     {Cycle{{{1, {-1, -1, 0}, I}, {2, {1, -1, 0}, I}, {3, {1, 1, 0}, I}, {4, {-1, 1, 0}, I}}},
      Cycle{{{13, {0, -1, 0}, I}, {14, {1, 0, 0}, I}, {15, {0, 1, 0}, I}, {16, {-1, 0, 0}, I}}}}},
    {Layer::F,
     {Cycle{{{1, {1, 0, 1}, X}, {9, {-1, 0, 1}, X}, {5, {-1, 0, -1}, X}, {11, {1, 0, -1}, X}}},
      Cycle{{{13, {1, 0, 0}, C}, {16, {0, 0, 1}, A}, {18, {-1, 0, 0}, C}, {17, {0, 0, -1}, A}}}}},
    {Layer::B,
     {Cycle{{{3, {-1, 0, 1}, X}, {12, {1, 0, 1}, X}, {7, {1, 0, -1}, X}, {10, {-1, 0, -1}, X}}},
      Cycle{{{14, {0, 0, 1}, A}, {20, {1, 0, 0}, C}, {19, {0, 0, -1}, A}, {15, {-1, 0, 0}, C}}}}},
    {Layer::L,
     {Cycle{{{4, {0, -1, 1}, I}, {10, {0, 1, 1}, I}, {6, {0, 1, -1}, I}, {9, {0, -1, -1}, I}}},
      Cycle{{{15, {0, 0, 1}, A}, {19, {0, 1, 0}, C}, {18, {0, 0, -1}, A}, {16, {0, -1, 0}, C}}}}},
    {Layer::R,
     {Cycle{{{2, {0, 1, 1}, I}, {11, {0, -1, 1}, I}, {8, {0, -1, -1}, I}, {12, {0, 1, -1}, I}}},
      Cycle{{{13, {0, 0, 1}, A}, {17, {0, -1, 0}, C}, {20, {0, 0, -1}, A}, {14, {0, 1, 0}, C}}}}},
    {Layer::Mx, {Cycle{{{1, {0, 0, 2}, I}, {5, {0, -2, 0}, I}, {7, {0, 0, -2}, I}, {3, {0, 2, 0}, I}}}}},
    {Layer::My, {Cycle{{{2, {0, 0, 2}, I}, {8, {2, 0, 0}, I}, {6, {0, 0, -2}, I}, {4, {-2, 0, 0}, I}}}}},
    {Layer::Mz, {Cycle{{{9, {-2, 0, 0}, I}, {11, {0, -2, 0}, I}, {12, {2, 0, 0}, I}, {10, {0, 2, 0}, I}}}}},
}};

constexpr std::array<const char*, 9> kLayerNames{"U", "D", "F", "B", "L", "R", "Mx", "My", "Mz"};

int modulus(int slot_index) { return slot_index < kEdgeCount ? 2 : 3; }

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

bool is_face(Layer l) { return static_cast<int>(l) < kFaceCount; }

std::optional<Layer> layer_from(std::string_view s) {
  for (std::size_t i = 0; i < kLayerNames.size(); ++i)
    if (s == kLayerNames[i]) return static_cast<Layer>(i);
  return std::nullopt;
}

}  // namespace

const GeneratorSpec& generator_spec(Layer layer) { return kTables[static_cast<int>(layer)]; }

std::uint64_t table_checksum() {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::int64_t v) {
    h ^= static_cast<std::uint64_t>(v) & 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& g : kTables) {
    mix(static_cast<int>(g.layer));
    for (const auto& cyc : g.cycles)
      for (const auto& e : cyc) {
        mix(e.slot);
        for (int v : e.translation) mix(v);
        mix(static_cast<int>(e.spin));
      }
  }
  return h;
}

Transform Transform::identity() {
  Transform t;
  for (int i = 0; i < kCubieCount; ++i) t.dest[i] = static_cast<std::uint8_t>(i);
  return t;
}

Transform Transform::from_spec(const GeneratorSpec& spec) {
  Transform t = identity();
  for (const auto& cyc : spec.cycles)
    for (int k = 0; k < 4; ++k) {
      const int a = cyc[k].slot - 1;
      t.dest[a] = static_cast<std::uint8_t>(cyc[(k + 1) % 4].slot - 1);
      t.twist[a] = static_cast<std::uint8_t>(spin_delta(cyc[k].spin));
      t.shift[a] = cyc[k].translation;
    }
  return t;
}

Transform Transform::then(const Transform& next) const {
  Transform r;
  for (int a = 0; a < kCubieCount; ++a) {
    const int mid = dest[a];
    r.dest[a] = next.dest[mid];
    r.twist[a] = static_cast<std::uint8_t>((twist[a] + next.twist[mid]) % modulus(a));
    r.shift[a] = add(shift[a], next.shift[mid]);
  }
  return r;
}

Transform Transform::inverse() const {
  Transform r;
  for (int a = 0; a < kCubieCount; ++a) {
    const int b = dest[a];
    r.dest[b] = static_cast<std::uint8_t>(a);
    r.twist[b] = static_cast<std::uint8_t>((modulus(a) - twist[a]) % modulus(a));
    r.shift[b] = {-shift[a][0], -shift[a][1], -shift[a][2]};
  }
  return r;
}

bool Transform::is_identity() const { return *this == identity(); }

std::vector<int> Transform::moved_slots() const {
  std::vector<int> out;
  for (int a = 0; a < kCubieCount; ++a)
    if (dest[a] != a) out.push_back(a + 1);
  return out;
}

CubeState apply(const CubeState& s, const Transform& t) {
  CubeState r = s;
  for (int a = 0; a < kCubieCount; ++a) {
    const CubieId c = s.occupant(SlotId(a + 1));
    r.set_occupant(SlotId(t.dest[a] + 1), c);
    if (t.twist[a]) r.set_spin_residue(c, s.spin_residue(c) + t.twist[a]);
    Displacement d = s.displacement(c);
    d += t.shift[a];
    r.set_displacement(c, d);
  }
  return r;
}

Move inverse(const Move& m) {
  Move r = m;
  switch (m.kind) {
    case MoveKind::Turn:
    case MoveKind::CornerTwist:
    case MoveKind::EdgeCycle:
      r.inverted = !m.inverted;
      break;
    case MoveKind::Square:
      break;
    case MoveKind::Commutator:
      r.a = m.b;
      r.b = m.a;
      break;
  }
  return r;
}

MoveSequence inverse(const MoveSequence& seq) {
  MoveSequence r;
  r.reserve(seq.size());
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) r.push_back(inverse(*it));
  return r;
}

MoveSequence expand_macro(const Move& m, bool strict) {
  using T = MoveSequence;
  auto turn = [](Layer l, bool inv = false) { return Move::turn(l, inv); };
  auto cat = [](T a, const T& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  switch (m.kind) {
    case MoveKind::Turn:
      if (strict) throw std::invalid_argument("expand_macro: " + to_string(m) + " is not a macro");
      return {m};
    case MoveKind::Square:
      return {turn(m.a), turn(m.a)};
    case MoveKind::Commutator:
      return {turn(m.a), turn(m.b), turn(m.a, true), turn(m.b, true)};
    case MoveKind::CornerTwist: {
      T c{turn(Layer::R), turn(Layer::D), turn(Layer::R, true), turn(Layer::D, true)};
      T twice = cat(c, c);
      return m.inverted ? inverse(twice) : twice;
    }
    case MoveKind::EdgeCycle: {
      const Move mm = turn(m.m, m.slice_inverted);
      const T c1{turn(m.a), mm, turn(m.a, true), inverse(mm)};
      const T c2{turn(m.b), mm, turn(m.b, true), inverse(mm)};
      const T c1i = inverse(c1), c2i = inverse(c2);
      T body = cat(cat(cat(cat(cat(c1, c2), c1i), c2), c1), c2i);
      if (m.inverted) body = inverse(body);
      if (m.setup) body = cat(cat(T{turn(*m.setup)}, body), T{turn(*m.setup, true)});
      return body;
    }
  }
  return {};
}

Transform transform_of(const Move& m) {
  if (m.kind == MoveKind::Turn) {
    const Transform t = Transform::from_spec(generator_spec(m.a));
    return m.inverted ? t.inverse() : t;
  }
  static std::mutex mu;
  static std::map<std::string, Transform> cache;
  const std::string key = to_string(m);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Transform t = Transform::identity();
  for (const Move& step : expand_macro(m)) t = t.then(transform_of(step));
  std::lock_guard lock(mu);
  cache.emplace(key, t);
  return t;
}

Transform transform_of(const MoveSequence& seq) {
  Transform t = Transform::identity();
  for (const Move& m : seq) t = t.then(transform_of(m));
  return t;
}

CubeState apply(const CubeState& s, const Move& m) { return apply(s, transform_of(m)); }

CubeState apply(const CubeState& s, const MoveSequence& seq) {
  CubeState r = s;
  for (const Move& m : seq) r = apply(r, m);
  return r;
}

std::string to_string(const Move& m) {
  const std::string a = kLayerNames[static_cast<int>(m.a)];
  const std::string b = kLayerNames[static_cast<int>(m.b)];
  switch (m.kind) {
    case MoveKind::Turn: return a + (m.inverted ? "'" : "");
    case MoveKind::Square: return a + "2";
    case MoveKind::Commutator: return "[" + a + "," + b + "]";
    case MoveKind::CornerTwist: return m.inverted ? "T2'" : "T2";
    case MoveKind::EdgeCycle: {
      std::string s = m.setup ? std::string(kLayerNames[static_cast<int>(*m.setup)]) + ">" : "";
      s += m.inverted ? "C4{" : "C3{";
      s += a + "," + b + "," + kLayerNames[static_cast<int>(m.m)] + (m.slice_inverted ? "'" : "") + "}";
      return s;
    }
  }
  return "?";
}

std::string to_string(const MoveSequence& seq) {
  std::string out;
  for (const Move& m : seq) {
    if (!out.empty()) out += ' ';
    out += to_string(m);
  }
  return out;
}

Move parse_move(std::string_view tok) {
  auto fail = [&]() -> Move { throw std::invalid_argument("bad move token '" + std::string(tok) + "'"); };
  if (tok.empty()) return fail();
  if (tok == "T2") return Move::corner_twist(false);
  if (tok == "T2'") return Move::corner_twist(true);
  if (tok.front() == '[') {
    const auto comma = tok.find(',');
    if (tok.back() != ']' || comma == std::string_view::npos) return fail();
    auto a = layer_from(tok.substr(1, comma - 1));
    auto b = layer_from(tok.substr(comma + 1, tok.size() - comma - 2));
    if (!a || !b || !is_face(*a) || !is_face(*b)) return fail();
    return Move::commutator(*a, *b);
  }
  std::optional<Layer> setup;
  std::string_view body = tok;
  if (auto gt = tok.find('>'); gt != std::string_view::npos) {
    setup = layer_from(tok.substr(0, gt));
    if (!setup || !is_face(*setup)) return fail();
    body = tok.substr(gt + 1);
  }
  if (body.size() > 3 && (body.substr(0, 3) == "C3{" || body.substr(0, 3) == "C4{") && body.back() == '}') {
    std::string_view inner = body.substr(3, body.size() - 4);
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i)
      if (i == inner.size() || inner[i] == ',') {
        parts.push_back(inner.substr(start, i - start));
        start = i + 1;
      }
    if (parts.size() != 3) return fail();
    bool m_inv = false;
    std::string_view ms = parts[2];
    if (!ms.empty() && ms.back() == '\'') {
      m_inv = true;
      ms.remove_suffix(1);
    }
    auto a = layer_from(parts[0]), b = layer_from(parts[1]), m = layer_from(ms);
    if (!a || !b || !m || !is_face(*a) || !is_face(*b) || is_face(*m)) return fail();
    return Move::edge_cycle(body[1] == '4', *a, *b, *m, m_inv, setup);
  }
  if (setup) return fail();
  std::string_view name = tok;
  char suffix = 0;
  if (tok.back() == '\'' || tok.back() == '2') {
    suffix = tok.back();
    name.remove_suffix(1);
  }
  auto l = layer_from(name);
  if (!l) return fail();
  if (suffix == '2') {
    if (!is_face(*l)) return fail();
    return Move::square(*l);
  }
  return Move::turn(*l, suffix == '\'');
}

MoveSequence parse_sequence(std::string_view text) {
  MoveSequence out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) out.push_back(parse_move(tok));
  return out;
}

namespace {

std::vector<Move> edge_cycle_actions() {
  // Opposite face pairs and the two slices orthogonal to each pair's axis.
  struct Axis {
    Layer p, q;
    std::array<Layer, 2> slices;
  };
  const std::array<Axis, 3> axes{{{Layer::U, Layer::D, {Layer::Mx, Layer::My}},
                                  {Layer::F, Layer::B, {Layer::Mx, Layer::Mz}},
                                  {Layer::L, Layer::R, {Layer::My, Layer::Mz}}}};
  const std::array<std::optional<Layer>, 5> setups{std::nullopt, Layer::U, Layer::D, Layer::L, Layer::R};
  std::vector<Move> out;
  std::vector<Transform> seen;
  for (const auto& setup : setups)
    for (const auto& ax : axes)
      for (int order = 0; order < 2; ++order)
        for (Layer m : ax.slices)
          for (bool m_inv : {false, true})
            for (bool c4 : {false, true}) {
              const Layer a = order ? ax.q : ax.p, b = order ? ax.p : ax.q;
              Move mv = Move::edge_cycle(c4, a, b, m, m_inv, setup);
              Transform t = transform_of(mv);
              if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
              seen.push_back(t);
              out.push_back(mv);
            }
  return out;
}

}  // namespace

const std::vector<Move>& fundamental_moves() {
  static const std::vector<Move> moves = [] {
    std::vector<Move> v;
    for (int f = 0; f < kFaceCount; ++f) {
      v.push_back(Move::turn(static_cast<Layer>(f)));
      v.push_back(Move::turn(static_cast<Layer>(f), true));
    }
    return v;
  }();
  return moves;
}

const std::vector<Move>& action_set(int phase) {
  static const std::vector<Move> p2{Move::corner_twist(), Move::turn(Layer::U), Move::turn(Layer::D)};
  static const std::vector<Move> p3{Move::turn(Layer::U),    Move::turn(Layer::U, true), Move::turn(Layer::D),
                                    Move::turn(Layer::D, true), Move::square(Layer::B),   Move::square(Layer::F),
                                    Move::square(Layer::L),    Move::square(Layer::R)};
  static const std::vector<Move> p4 = edge_cycle_actions();
  switch (phase) {
    case 1: return fundamental_moves();
    case 2: return p2;
    case 3: return p3;
    case 4: return p4;
    default: throw std::invalid_argument("phase must be 1..4, got " + std::to_string(phase));
  }
}

Scramble scramble(std::mt19937_64& rng, const std::vector<Move>& actions, int length) {
  if (length < 1) throw std::invalid_argument("scramble length must be >= 1");
  if (actions.empty()) throw std::invalid_argument("empty action set");
  std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
  Scramble s{CubeState::solved(), {}};
  for (int i = 0; i < length; ++i) {
    const Move& m = actions[pick(rng)];
    s.state = apply(s.state, m);
    s.moves.push_back(m);
  }
  return s;
}

bool GroupReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string GroupReport::to_text() const {
  std::size_t w = 0;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(w - c.name.size() + 2, ' ') << c.detail << "\n";
  }
  return os.str();
}

GroupReport group_property_report() {
  GroupReport rep;
  auto add_check = [&rep](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto spins_touched = [](const Transform& t, bool edges) {
    int n = 0;
    for (int a = edges ? 0 : kEdgeCount; a < (edges ? kEdgeCount : kCubieCount); ++a) n += t.twist[a] != 0;
    return n;
  };

  for (int f = 0; f < kFaceCount; ++f) {
    const Layer l = static_cast<Layer>(f);
    const std::string name = kLayerNames[f];
    const Transform g = transform_of(Move::turn(l));
    const Transform gi = transform_of(Move::turn(l, true));

    int order = 0;
    Transform p = Transform::identity();
    for (int k = 1; k <= 8 && order == 0; ++k) {
      p = p.then(g);
      if (p.is_identity()) order = k;
    }
    add_check("order(" + name + ") = 4", order == 4, "order " + std::to_string(order));
    add_check(name + " " + name + "' = identity", g.then(gi).is_identity() && gi.then(g).is_identity());

    bool sums = true, shapes = true;
    for (const auto& cyc : generator_spec(l).cycles) {
      Vec3 total{0, 0, 0};
      for (const auto& e : cyc) {
        total = add(total, e.translation);
        int nz = 0;
        for (int v : e.translation) {
          nz += v != 0;
          if (std::abs(v) > 1) shapes = false;
        }
        if (nz != (e.slot <= kEdgeCount ? 2 : 1)) shapes = false;
      }
      if (total != Vec3{0, 0, 0}) sums = false;
    }
    add_check("translation sum zero (" + name + ")", sums);
    add_check("translation shape (" + name + ")", shapes);

    const int e = spins_touched(g, true), c = spins_touched(g, false);
    bool cls = false;
    if (l == Layer::U || l == Layer::D) cls = e == 0 && c == 0;
    if (l == Layer::L || l == Layer::R) cls = e == 0 && c == 4;
    if (l == Layer::F || l == Layer::B) cls = e == 4 && c == 4;
    add_check("orientation class (" + name + ")", cls,
              std::to_string(e) + " edges flipped, " + std::to_string(c) + " corners twisted");

    const Transform sq = transform_of(Move::square(l));
    add_check("square preserves spins (" + name + "2)", spins_touched(sq, true) + spins_touched(sq, false) == 0);
  }

  const Transform u = transform_of(Move::turn(Layer::U)), d = transform_of(Move::turn(Layer::D));
  add_check("U D = D U", u.then(d) == d.then(u));

  int cycles = 0, bad = 0;
  std::string first_bad;
  for (const Move& mv : action_set(4)) {
    if (mv.inverted) continue;
    ++cycles;
    const Transform t3 = transform_of(mv);
    const Transform t4 = transform_of(inverse(mv));
    const auto moved = t3.moved_slots();
    bool ok = moved.size() == 3 && std::all_of(moved.begin(), moved.end(), [](int s) { return s <= kEdgeCount; });
    ok = ok && spins_touched(t3, true) + spins_touched(t3, false) == 0;
    ok = ok && t3.then(t3).then(t3).is_identity() && !t3.then(t3).is_identity();
    ok = ok && t4.moved_slots() == moved && t4 != t3 && t3.then(t4).is_identity();
    if (!ok) {
      ++bad;
      if (first_bad.empty()) first_bad = to_string(mv);
    }
  }
  add_check("C3/C4 are pure edge 3-cycles", bad == 0 && cycles > 0,
            std::to_string(cycles) + " forward cycles checked" + (bad ? ", first failure " + first_bad : ""));

  const Transform t2 = transform_of(Move::corner_twist());
  bool twist_ok = spins_touched(t2, true) == 0;
  for (int a = kEdgeCount; a < kCubieCount; ++a) twist_ok = twist_ok && t2.dest[a] == a;
  add_check("T2 keeps corners in place and edges oriented", twist_ok);
  return rep;
}

}  // namespace qube
