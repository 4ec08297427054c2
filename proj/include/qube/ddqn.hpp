#pragma once

// Per-phase double-DQN training: epsilon-greedy rollouts from scrambled
// states, replay memory, periodic target sync.

#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "qube/config.hpp"
#include "qube/group.hpp"
#include "qube/hamiltonian.hpp"
#include "qube/mlp.hpp"

namespace qube {

/// max(floor, decay^step).
double epsilon(std::int64_t step, double decay, double floor);
/// Uniform random index with probability eps, else argmax (lowest index on ties).
int select_action(const Eigen::VectorXd& q, double eps, std::mt19937_64& rng);

struct Transition {
  std::vector<double> obs;
  int action;
  double reward;
  std::vector<double> next_obs;
  bool terminal;
};

/// Fixed-capacity FIFO of transitions.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int obs_size);
  void push(const Transition& t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  /// i-th oldest stored transition.
  Transition at(std::size_t i) const;

  struct Batch {
    Eigen::MatrixXd obs, next_obs;  // columns are samples
    std::vector<int> actions;
    Eigen::VectorXd rewards;
    std::vector<bool> terminal;
  };
  /// n distinct transitions chosen uniformly. Requires n <= size().
  Batch sample(std::size_t n, std::mt19937_64& rng);

 private:
  std::size_t capacity_;
  int obs_size_;
  std::size_t head_ = 0, size_ = 0;
  Eigen::MatrixXd obs_, next_obs_;
  std::vector<int> actions_;
  std::vector<double> rewards_;
  std::vector<bool> terminal_;
  std::vector<std::size_t> scratch_;
};

struct EpisodeStats {
  int episode = 0;
  int scramble_len = 0;
  int steps = 0;
  bool solved = false;
  double cum_reward = 0;
  std::int64_t final_energy = 0;
  double epsilon = 1.0;
};

/// Layer sizes of the phase's Q-network: observation, hidden1, hidden2, actions.
std::vector<int> network_dims(const PhaseConfig& cfg);

inline constexpr const char* kMetricsHeader = "episode,scramble_len,steps,solved,cum_reward,final_energy,epsilon";
void write_metrics_row(std::ostream& os, const EpisodeStats& s);

/// Scrambles solved with the phase's own action set, redrawing until the
/// result is not already ground for the phase.
Scramble phase_scramble(const PhaseConfig& cfg, const CoefficientSet& k, int length, std::mt19937_64& rng);

class PhaseTrainer {
 public:
  PhaseTrainer(PhaseConfig cfg, CoefficientSet coeffs, std::uint64_t seed);

  EpisodeStats run_episode();
  /// Runs up to cfg.episodes episodes (fewer if the moving success reaches
  /// cfg.stop_success). on_episode sees each episode's stats and the moving
  /// success after it.
  void train(const std::function<void(const EpisodeStats&, double)>& on_episode = {});

  const Mlp& online() const { return online_; }
  const Mlp& target() const { return target_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  const PhaseConfig& config() const { return cfg_; }
  std::int64_t env_steps() const { return env_steps_; }
  int episodes_done() const { return episode_; }
  double moving_success() const;
  const std::vector<EpisodeStats>& history() const { return history_; }

 private:
  PhaseConfig cfg_;
  CoefficientSet coeffs_;
  PhaseHamiltonian ham_;
  const std::vector<Move>& actions_;
  std::vector<Transform> action_tf_;
  std::mt19937_64 rng_;
  Mlp online_, target_;
  Adam adam_;
  ReplayBuffer buffer_;
  std::int64_t env_steps_ = 0;
  int episode_ = 0;
  std::vector<EpisodeStats> history_;
};

struct PhaseEval {
  int episodes = 0;
  int solved = 0;
  double mean_steps_solved = 0;
  double success_rate() const { return episodes ? static_cast<double>(solved) / episodes : 0.0; }
};

/// Greedy rollouts of the model over scrambles of length min_len..max_len,
/// capped by the phase step rule at the realized length.
PhaseEval evaluate_phase(const Mlp& model, const PhaseConfig& cfg, const CoefficientSet& k, int n_episodes,
                         int min_len, int max_len, std::mt19937_64& rng);

}  // namespace qube
