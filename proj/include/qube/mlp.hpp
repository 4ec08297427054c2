#pragma once

// Two-hidden-layer Q-network (ReLU, ReLU, linear) with Adam and a
// checksummed binary model format.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <vector>

namespace qube {

/// Per-phase layer sizes; phase 4 output is the action count.
std::vector<int> phase_dims(int phase, int action_count);

struct MlpGradients {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
};

class Mlp {
 public:
  Mlp() = default;
  /// Zero weights and biases. Throws std::invalid_argument unless dims has
  /// four positive entries.
  explicit Mlp(std::vector<int> dims);
  /// Weights uniform in +-1/sqrt(fan_in), biases zero.
  static Mlp init(std::vector<int> dims, std::mt19937_64& rng);

  const std::vector<int>& dims() const { return dims_; }
  int input_size() const { return dims_.front(); }
  int output_size() const { return dims_.back(); }
  std::size_t parameter_count() const;

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  /// Columns are samples.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;

  /// Mean over the batch of (Q(x_k, a_k) - y_k)^2; only the taken action's
  /// output contributes. Fills grad with d loss / d parameters.
  double loss_and_gradient(const Eigen::MatrixXd& x, const std::vector<int>& actions, const Eigen::VectorXd& targets,
                           MlpGradients& grad) const;
  double loss(const Eigen::MatrixXd& x, const std::vector<int>& actions, const Eigen::VectorXd& targets) const;

  std::vector<Eigen::MatrixXd>& weights() { return w_; }
  std::vector<Eigen::VectorXd>& biases() { return b_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return w_; }
  const std::vector<Eigen::VectorXd>& biases() const { return b_; }

  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  void check_input(Eigen::Index rows) const;

  std::vector<int> dims_;
  std::vector<Eigen::MatrixXd> w_;  // w_[k] is dims[k+1] x dims[k]
  std::vector<Eigen::VectorXd> b_;
};

class Adam {
 public:
  Adam() = default;
  explicit Adam(const Mlp& model, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void update(Mlp& model, const MlpGradients& grad, double lr);
  std::int64_t steps() const { return t_; }

 private:
  double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::int64_t t_ = 0;
  MlpGradients m_, v_;
};

/// Thrown on a non-finite loss.
struct TrainingDiverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One Adam step on the masked MSE. Returns the loss before the update.
double sgd_step(Mlp& model, Adam& adam, const Eigen::MatrixXd& x, const std::vector<int>& actions,
                const Eigen::VectorXd& targets, double lr);

/// Double-Q targets: r + gamma * Q_target(s', argmax_a Q_online(s', a)),
/// or r alone for terminal transitions. next_x columns are samples.
Eigen::VectorXd td_targets(const Mlp& online, const Mlp& target, const Eigen::VectorXd& rewards,
                           const Eigen::MatrixXd& next_x, const std::vector<bool>& terminal, double gamma);

/// Lowest index among the maxima.
int argmax(const Eigen::VectorXd& q);

struct ModelFileError : std::runtime_error {
  ModelFileError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

std::vector<std::uint8_t> serialize(const Mlp& model, int phase);
/// expected_phase 0 accepts any phase tag. Throws ModelFileError.
Mlp deserialize(const std::vector<std::uint8_t>& bytes, int expected_phase, int* phase_out = nullptr);
void save(const Mlp& model, int phase, const std::filesystem::path& path);
Mlp load(const std::filesystem::path& path, int expected_phase, int* phase_out = nullptr);

}  // namespace qube
