#include "qube/ddqn.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace qube {

double epsilon(std::int64_t step, double decay, double floor) {
  return std::max(floor, std::pow(decay, static_cast<double>(step)));
}

int select_action(const Eigen::VectorXd& q, double eps, std::mt19937_64& rng) {
  if (q.size() == 0) throw std::invalid_argument("select_action on empty q-vector");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (eps > 0 && coin(rng) < eps) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(q.size()) - 1);
    return pick(rng);
  }
  return argmax(q);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity, int obs_size)
    : capacity_(capacity),
      obs_size_(obs_size),
      obs_(obs_size, static_cast<Eigen::Index>(capacity)),
      next_obs_(obs_size, static_cast<Eigen::Index>(capacity)),
      actions_(capacity),
      rewards_(capacity),
      terminal_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayBuffer::push(const Transition& t) {
  if (static_cast<int>(t.obs.size()) != obs_size_ || static_cast<int>(t.next_obs.size()) != obs_size_)
    throw std::invalid_argument("transition observation size mismatch");
  const auto col = static_cast<Eigen::Index>(head_);
  for (int i = 0; i < obs_size_; ++i) {
    obs_(i, col) = t.obs[i];
    next_obs_(i, col) = t.next_obs[i];
  }
  actions_[head_] = t.action;
  rewards_[head_] = t.reward;
  terminal_[head_] = t.terminal;
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) {
    scratch_.push_back(size_);
    ++size_;
  }
}

Transition ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("replay index");
  const std::size_t slot = (head_ + capacity_ - size_ + i) % capacity_;
  const auto col = static_cast<Eigen::Index>(slot);
  Transition t{std::vector<double>(obs_size_), actions_[slot], rewards_[slot], std::vector<double>(obs_size_),
               terminal_[slot]};
  for (int r = 0; r < obs_size_; ++r) {
    t.obs[r] = obs_(r, col);
    t.next_obs[r] = next_obs_(r, col);
  }
  return t;
}

ReplayBuffer::Batch ReplayBuffer::sample(std::size_t n, std::mt19937_64& rng) {
  if (n > size_) throw std::invalid_argument("batch larger than replay contents");
  // Partial Fisher-Yates over a persistent index permutation.
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, size_ - 1);
    std::swap(scratch_[i], scratch_[pick(rng)]);
  }
  Batch b;
  b.obs.resize(obs_size_, static_cast<Eigen::Index>(n));
  b.next_obs.resize(obs_size_, static_cast<Eigen::Index>(n));
  b.rewards.resize(static_cast<Eigen::Index>(n));
  b.actions.resize(n);
  b.terminal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = static_cast<Eigen::Index>(scratch_[i]);
    const auto dst = static_cast<Eigen::Index>(i);
    b.obs.col(dst) = obs_.col(src);
    b.next_obs.col(dst) = next_obs_.col(src);
    b.actions[i] = actions_[scratch_[i]];
    b.rewards(dst) = rewards_[scratch_[i]];
    b.terminal[i] = terminal_[scratch_[i]];
  }
  return b;
}

std::vector<int> network_dims(const PhaseConfig& cfg) {
  return {observation_size(cfg.phase), cfg.hidden1, cfg.hidden2, static_cast<int>(action_set(cfg.phase).size())};
}

void write_metrics_row(std::ostream& os, const EpisodeStats& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%lld,%.9f\n", s.episode, s.scramble_len, s.steps, s.solved ? 1 : 0,
                s.cum_reward, static_cast<long long>(s.final_energy), s.epsilon);
  os << buf;
}

Scramble phase_scramble(const PhaseConfig& cfg, const CoefficientSet& k, int length, std::mt19937_64& rng) {
  const PhaseHamiltonian h = hamiltonian_for_phase(cfg.phase);
  for (;;) {
    Scramble s = scramble(rng, action_set(cfg.phase), length);
    if (!is_ground(s.state, h, k)) return s;
  }
}

namespace {

// Ground conditions of earlier phases must survive every move of this phase.
void assert_prefix_ground(const CubeState& s, int phase, const CoefficientSet& k) {
  for (int p = 1; p < phase; ++p)
    if (!is_ground(s, hamiltonian_for_phase(p), k))
      throw std::logic_error("phase " + std::to_string(phase) + " action broke phase " + std::to_string(p) + " ground");
}

// Batch-sized temporaries are freed and reallocated every SGD step; with glibc's
// defaults that churns mmap/trim and roughly doubles wall time.
void keep_heap_warm() {
#if defined(__GLIBC__)
  static const bool once = [] {
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
    return true;
  }();
  (void)once;
#endif
}

Eigen::VectorXd to_vec(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

}  // namespace

PhaseTrainer::PhaseTrainer(PhaseConfig cfg, CoefficientSet coeffs, std::uint64_t seed)
    : cfg_(cfg),
      coeffs_(std::move(coeffs)),
      ham_(hamiltonian_for_phase(cfg.phase)),
      actions_(action_set(cfg.phase)),
      rng_(seed),
      buffer_(static_cast<std::size_t>(cfg.memory_size), observation_size(cfg.phase)) {
  keep_heap_warm();
  for (const Move& m : actions_) action_tf_.push_back(transform_of(m));
  online_ = Mlp::init(network_dims(cfg_), rng_);
  target_ = online_;
  adam_ = Adam(online_);
}

EpisodeStats PhaseTrainer::run_episode() {
  std::uniform_int_distribution<int> len(cfg_.scramble_min, cfg_.scramble_max);
  EpisodeStats st;
  st.episode = ++episode_;
  st.scramble_len = len(rng_);
  CubeState s = phase_scramble(cfg_, coeffs_, st.scramble_len, rng_).state;
  const int cap = cfg_.step_cap(st.scramble_len);
  std::vector<double> obs = observe(s, cfg_.phase);
  double eps = epsilon(env_steps_, cfg_.random_action_decay, cfg_.epsilon_floor);
  while (st.steps < cap) {
    eps = epsilon(env_steps_, cfg_.random_action_decay, cfg_.epsilon_floor);
    const int a = select_action(online_.forward(to_vec(obs)), eps, rng_);
    CubeState next = apply(s, action_tf_[a]);
    assert_prefix_ground(next, cfg_.phase, coeffs_);
    const double r = reward(next, ham_, coeffs_, cfg_.premium);
    if (!std::isfinite(r)) throw TrainingDiverged("non-finite reward");
    const bool done = is_ground(next, ham_, coeffs_);
    std::vector<double> next_obs = observe(next, cfg_.phase);
    buffer_.push({obs, a, r, next_obs, done});
    ++env_steps_;
    ++st.steps;
    st.cum_reward += r;
    if (buffer_.size() >= static_cast<std::size_t>(cfg_.batch_size)) {
      auto b = buffer_.sample(static_cast<std::size_t>(cfg_.batch_size), rng_);
      const Eigen::VectorXd y = td_targets(online_, target_, b.rewards, b.next_obs, b.terminal, cfg_.gamma);
      sgd_step(online_, adam_, b.obs, b.actions, y, cfg_.learning_rate);
    }
    s = std::move(next);
    obs = std::move(next_obs);
    if (done) {
      st.solved = true;
      break;
    }
  }
  st.final_energy = energy(s, ham_, coeffs_);
  st.epsilon = eps;
  if (episode_ % cfg_.target_update_episodes == 0) target_ = online_;
  history_.push_back(st);
  return st;
}

double PhaseTrainer::moving_success() const {
  if (history_.empty()) return 0.0;
  const std::size_t n = std::min<std::size_t>(history_.size(), static_cast<std::size_t>(cfg_.success_window));
  int ok = 0;
  for (std::size_t i = history_.size() - n; i < history_.size(); ++i) ok += history_[i].solved;
  return static_cast<double>(ok) / static_cast<double>(n);
}

void PhaseTrainer::train(const std::function<void(const EpisodeStats&, double)>& on_episode) {
  while (episode_ < cfg_.episodes) {
    const EpisodeStats st = run_episode();
    const double ms = moving_success();
    if (on_episode) on_episode(st, ms);
    if (cfg_.stop_success > 0 && static_cast<int>(history_.size()) >= cfg_.success_window && ms >= cfg_.stop_success)
      break;
  }
}

PhaseEval evaluate_phase(const Mlp& model, const PhaseConfig& cfg, const CoefficientSet& k, int n_episodes,
                         int min_len, int max_len, std::mt19937_64& rng) {
  if (min_len < 1 || max_len < min_len) throw std::invalid_argument("scramble range must start at 1 or above");
  const auto& actions = action_set(cfg.phase);
  std::vector<Transform> tf;
  for (const Move& m : actions) tf.push_back(transform_of(m));
  const PhaseHamiltonian h = hamiltonian_for_phase(cfg.phase);
  std::uniform_int_distribution<int> len(min_len, max_len);
  PhaseEval ev;
  long total_steps = 0;
  for (int e = 0; e < n_episodes; ++e) {
    const int l = len(rng);
    CubeState s = phase_scramble(cfg, k, l, rng).state;
    const int cap = cfg.step_cap(l);
    int steps = 0;
    while (steps < cap && !is_ground(s, h, k)) {
      const auto obs = observe(s, cfg.phase);
      s = apply(s, tf[argmax(model.forward(to_vec(obs)))]);
      ++steps;
    }
    ++ev.episodes;
    if (is_ground(s, h, k)) {
      ++ev.solved;
      total_steps += steps;
    }
  }
  ev.mean_steps_solved = ev.solved ? static_cast<double>(total_steps) / ev.solved : 0.0;
  return ev;
}

}  // namespace qube
