// qube: train, solve, evaluate and verify the four-phase cube solver.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "qube/ddqn.hpp"
#include "qube/oracle.hpp"
#include "qube/pipeline.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

qube::KeyValueConfig read_config(const std::string& path) {
  return path.empty() ? qube::KeyValueConfig{} : qube::KeyValueConfig::load(path);
}

// Models dir may carry its own qube.cfg when no --config is given.
qube::KeyValueConfig solver_config(const std::string& path, const std::string& models) {
  if (!path.empty()) return qube::KeyValueConfig::load(path);
  const auto local = std::filesystem::path(models) / "qube.cfg";
  return std::filesystem::exists(local) ? qube::KeyValueConfig::load(local) : qube::KeyValueConfig{};
}

int cmd_train(int phase, const std::string& config, std::uint64_t seed, const std::string& out,
              const std::string& metrics, int episodes, bool quiet) {
  const auto cfg = read_config(config);
  qube::PhaseConfig pc = qube::PhaseConfig::from(cfg, phase);
  if (episodes > 0) pc.episodes = episodes;
  qube::PhaseTrainer trainer(pc, qube::CoefficientSet::from(cfg), seed);

  std::ofstream csv;
  if (!metrics.empty()) {
    csv.open(metrics, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + metrics);
    csv << qube::kMetricsHeader << "\n";
  }
  trainer.train([&](const qube::EpisodeStats& st, double moving) {
    if (csv.is_open()) qube::write_metrics_row(csv, st);
    if (!quiet && st.episode % 100 == 0)
      std::cerr << "episode " << st.episode << "  moving success " << std::fixed << std::setprecision(3) << moving
                << "  epsilon " << st.epsilon << "\n";
  });
  qube::save(trainer.online(), phase, out);
  std::cout << "phase " << phase << ": " << trainer.episodes_done() << " episodes, " << trainer.env_steps()
            << " steps, moving success " << trainer.moving_success() << "\n";
  return kOk;
}

int cmd_solve(const std::string& models, const std::string& config, const std::string& text, bool trace) {
  const auto sm = qube::load_models(models, solver_config(config, models));
  const qube::MoveSequence scramble = qube::parse_sequence(text);
  const qube::CubeState start = qube::apply(qube::CubeState::solved(), scramble);
  const auto res = qube::solve(start, sm, trace ? &std::cout : nullptr);
  for (int p = 1; p <= 4; ++p)
    std::cout << "phase " << p << (res.phase_success[p - 1] ? " ok   " : " FAIL ") << qube::to_string(res.phase_moves[p - 1])
              << "\n";
  std::cout << (res.success ? "solved" : "not solved") << " in " << res.total_moves() << " moves\n";
  return res.success ? kOk : kCheckFailed;
}

int cmd_eval(const std::string& models, const std::string& config, int episodes, int min_len, int max_len,
             std::uint64_t seed, const std::string& out, double min_success) {
  const auto sm = qube::load_models(models, solver_config(config, models));
  const auto rep = qube::evaluate_full(sm, episodes, min_len, max_len, seed);
  if (!out.empty()) {
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + out);
    rep.write_csv(f);
  }
  std::cout << std::fixed << std::setprecision(4);
  for (int p = 1; p <= 4; ++p) std::cout << "phase " << p << " success " << rep.phase_success(p) << "\n";
  std::cout << "total success " << rep.total_success() << " (" << rep.solved << "/" << rep.episodes << ")"
            << ", replay mismatches " << rep.replay_mismatches << "\n";
  if (rep.replay_mismatches > 0) return kCheckFailed;
  if (min_success >= 0 && rep.total_success() < min_success) return kCheckFailed;
  return kOk;
}

// One agent alone, greedy, on scrambles drawn from its own action set.
int cmd_eval_phase(int phase, const std::string& models, const std::string& config, int episodes, int min_len,
                   int max_len, std::uint64_t seed, double min_success) {
  const auto cfg = solver_config(config, models);
  const qube::PhaseConfig pc = qube::PhaseConfig::from(cfg, phase);
  const qube::Mlp net = qube::load(qube::model_path(models, phase), phase);
  if (net.dims() != qube::network_dims(pc)) throw std::invalid_argument("model dims do not match the phase config");
  std::mt19937_64 rng(seed);
  const auto ev = qube::evaluate_phase(net, pc, qube::CoefficientSet::from(cfg), episodes, min_len, max_len, rng);
  std::cout << std::fixed << std::setprecision(4) << "phase " << phase << " greedy success " << ev.success_rate() << " ("
            << ev.solved << "/" << ev.episodes << "), mean steps when solved " << ev.mean_steps_solved << "\n";
  return (min_success >= 0 && ev.success_rate() < min_success) ? kCheckFailed : kOk;
}

int cmd_verify(bool strict, int depth) {
  const auto rep = qube::group_property_report();
  std::cout << rep.to_text();
  std::cout << "phase 4 action count " << qube::action_set(4).size() << "\n";
  std::cout << "table checksum " << std::hex << qube::table_checksum() << std::dec << "\n";
  bool ok = rep.all_passed();
  if (depth > 0) {
    const auto scan = qube::reachable_invariant_scan(depth);
    std::cout << scan.to_text();
    if (!scan.ok()) return kCheckFailed;
  }
  return (!ok && strict) ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qube: Hamiltonian-reward DDQN cube solver"};
  app.require_subcommand(1);

  int phase = 1, eval_phase = 0, episodes = 0, min_len = 1, max_len = 50, depth = 0;
  std::uint64_t seed = 1;
  std::string config, out, metrics, models, scramble_text;
  bool trace = false, strict = false, quiet = false;
  double min_success = -1;

  auto* train = app.add_subcommand("train", "train one phase agent");
  train->add_option("--phase", phase, "phase 1..4")->required()->check(CLI::Range(1, 4));
  train->add_option("--config", config, "key = value config file")->check(CLI::ExistingFile);
  train->add_option("--seed", seed, "RNG seed");
  train->add_option("--out", out, "model file to write")->required();
  train->add_option("--metrics", metrics, "per-episode CSV");
  train->add_option("--episodes", episodes, "override the episode budget")->check(CLI::PositiveNumber);
  train->add_flag("--quiet", quiet, "no progress on stderr");

  auto* solve = app.add_subcommand("solve", "solve a scrambled cube with trained models");
  solve->add_option("--models", models, "directory with phase1..4.qmlp")->required()->check(CLI::ExistingDirectory);
  solve->add_option("--config", config, "config file (default: DIR/qube.cfg if present)")->check(CLI::ExistingFile);
  solve->add_option("--scramble", scramble_text, "move sequence, e.g. \"F U R2\"")->required();
  solve->add_flag("--trace", trace, "print the net diagram after every move");

  auto* eval = app.add_subcommand("eval", "evaluate the full pipeline on random scrambles");
  eval->add_option("--models", models, "directory with phase1..4.qmlp")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--config", config, "config file (default: DIR/qube.cfg if present)")->check(CLI::ExistingFile);
  eval->add_option("--episodes", episodes, "number of scrambles")->default_val(1000)->check(CLI::PositiveNumber);
  eval->add_option("--min-scramble", min_len, "shortest scramble")->default_val(1)->check(CLI::PositiveNumber);
  eval->add_option("--max-scramble", max_len, "longest scramble")->default_val(50)->check(CLI::PositiveNumber);
  eval->add_option("--seed", seed, "scramble seed");
  eval->add_option("--out", out, "per-length CSV");
  eval->add_option("--min-success", min_success, "exit 1 below this total success")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--phase", eval_phase, "evaluate only this phase's agent on its own scrambles")
      ->check(CLI::Range(1, 4));

  auto* verify = app.add_subcommand("verify", "group property checks and invariant scan");
  verify->add_flag("--strict", strict, "exit nonzero on any failed group check");
  verify->add_option("--depth", depth, "invariant scan depth (0 = skip)")->check(CLI::Range(0, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*train) return cmd_train(phase, config, seed, out, metrics, episodes, quiet);
    if (*solve) return cmd_solve(models, config, scramble_text, trace);
    if (*eval) {
      if (max_len < min_len) throw std::invalid_argument("--max-scramble must be >= --min-scramble");
      if (eval_phase) return cmd_eval_phase(eval_phase, models, config, episodes, min_len, max_len, seed, min_success);
      return cmd_eval(models, config, episodes, min_len, max_len, seed, out, min_success);
    }
    if (*verify) return cmd_verify(strict, depth);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
