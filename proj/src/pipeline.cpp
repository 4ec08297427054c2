#include "qube/pipeline.hpp"

#include <ostream>
#include <stdexcept>

namespace qube {

std::filesystem::path model_path(const std::filesystem::path& dir, int phase) {
  return dir / ("phase" + std::to_string(phase) + ".qmlp");
}

SolverModels load_models(const std::filesystem::path& dir, const KeyValueConfig& cfg) {
  SolverModels m;
  m.coeffs = CoefficientSet::from(cfg);
  for (int p = 1; p <= 4; ++p) {
    m.nets[p - 1] = load(model_path(dir, p), p);
    m.configs[p - 1] = PhaseConfig::from(cfg, p);
    if (m.nets[p - 1].dims() != network_dims(m.configs[p - 1]))
      throw std::invalid_argument("model " + model_path(dir, p).string() + " has dims that do not match the phase " +
                                  std::to_string(p) + " config");
  }
  return m;
}

int SolveResult::total_moves() const {
  int n = 0;
  for (const auto& s : phase_moves) n += static_cast<int>(s.size());
  return n;
}

MoveSequence SolveResult::all_moves() const {
  MoveSequence all;
  for (const auto& s : phase_moves) all.insert(all.end(), s.begin(), s.end());
  return all;
}

SolveResult solve(const CubeState& start, const SolverModels& models, std::ostream* trace) {
  for (int p = 1; p <= 4; ++p)
    if (models.nets[p - 1].output_size() != static_cast<int>(action_set(p).size()) ||
        models.nets[p - 1].input_size() != observation_size(p))
      throw std::invalid_argument("model dims do not match phase " + std::to_string(p));
  SolveResult res;
  CubeState s = start;
  if (trace) *trace << "start\n" << render_net(s);
  for (int p = 1; p <= 4; ++p) {
    const PhaseHamiltonian h = hamiltonian_for_phase(p);
    const auto& actions = action_set(p);
    const Mlp& net = models.nets[p - 1];
    const int cap = models.configs[p - 1].solve_cap();
    int steps = 0;
    while (!is_ground(s, h, models.coeffs) && steps < cap) {
      const auto obs = observe(s, p);
      const Move& m = actions[argmax(net.forward(Eigen::Map<const Eigen::VectorXd>(obs.data(), obs.size())))];
      s = apply(s, m);
      res.phase_moves[p - 1].push_back(m);
      ++steps;
      if (trace) *trace << "phase " << p << " move " << steps << ": " << to_string(m) << "\n" << render_net(s);
    }
    res.phase_success[p - 1] = is_ground(s, h, models.coeffs);
    if (!res.phase_success[p - 1]) {
      res.failure_phase = p;
      break;
    }
  }
  res.final_state = s;
  res.success = res.failure_phase == 0 && is_solved(s);
  if (trace) *trace << (res.success ? "solved" : "failed in phase " + std::to_string(res.failure_phase)) << "\n";
  return res;
}

double EvalReport::phase_success(int phase) const {
  int reached = 0, passed = 0;
  for (const auto& b : bins) {
    reached += b.reached[phase - 1];
    passed += b.passed[phase - 1];
  }
  return reached ? static_cast<double>(passed) / reached : 1.0;
}

void EvalReport::write_csv(std::ostream& os) const {
  os << "scramble_len,episodes,phase1,phase2,phase3,phase4,total\n";
  for (const auto& b : bins) {
    os << b.scramble_len << ',' << b.episodes;
    for (int p = 0; p < 4; ++p) os << ',' << (b.reached[p] ? static_cast<double>(b.passed[p]) / b.reached[p] : 1.0);
    os << ',' << (b.episodes ? static_cast<double>(b.solved) / b.episodes : 0.0) << '\n';
  }
}

EvalReport evaluate_full(const SolverModels& models, int n, int min_len, int max_len, std::uint64_t seed) {
  if (min_len < 1 || max_len < min_len || n < 1) throw std::invalid_argument("need n >= 1 and 1 <= min_len <= max_len");
  EvalReport rep;
  for (int l = min_len; l <= max_len; ++l) rep.bins.push_back(LengthBin{l, 0, {}, {}, 0});
  std::mt19937_64 rng(seed);
  for (int e = 0; e < n; ++e) {
    const int l = min_len + e % (max_len - min_len + 1);
    const Scramble sc = scramble(rng, fundamental_moves(), l);
    const SolveResult r = solve(sc.state, models);
    LengthBin& bin = rep.bins[l - min_len];
    ++bin.episodes;
    ++rep.episodes;
    for (int p = 0; p < 4; ++p) {
      if (r.failure_phase != 0 && p + 1 > r.failure_phase) break;
      ++bin.reached[p];
      bin.passed[p] += r.phase_success[p];
    }
    if (r.success) {
      if (is_solved(qube::apply(sc.state, r.all_moves()))) {
        ++bin.solved;
        ++rep.solved;
      } else {
        ++rep.replay_mismatches;
      }
    }
  }
  return rep;
}

}  // namespace qube
