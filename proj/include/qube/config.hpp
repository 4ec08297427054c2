#pragma once

// Key-value run configuration ("key = value", '#' comments) and the per-phase
// hyperparameters it populates.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace qube {

class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  /// Throws std::runtime_error with the line number on malformed input.
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool contains(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  /// Looks up "phaseN.key" first, then "key".
  std::optional<std::string> get_phase(int phase, const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }
  /// Directory of the file this config came from, for relative paths.
  const std::filesystem::path& base_dir() const { return base_dir_; }

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_ = ".";
};

enum class StepRule { PlusFive, TimesTwo };

struct PhaseConfig {
  int phase = 1;
  double learning_rate = 1e-4;
  double random_action_decay = 0.9995;
  double epsilon_floor = 0.05;
  double gamma = 0.9;
  double premium = 5000.0;
  int target_update_episodes = 100;
  int batch_size = 1240;
  int memory_size = 10000;
  StepRule step_rule = StepRule::PlusFive;
  int scramble_min = 1;
  int scramble_max = 50;
  int episodes = 3000;
  /// Training stops early once the moving success over the last
  /// success_window episodes reaches stop_success (0 disables).
  int success_window = 100;
  double stop_success = 0.0;
  /// Hidden layer widths of the phase's Q-network.
  int hidden1 = 100;
  int hidden2 = 50;

  int step_cap(int scramble_length) const {
    return step_rule == StepRule::TimesTwo ? 2 * scramble_length : scramble_length + 5;
  }
  /// Cap used at solve time: the training rule at the longest scramble.
  int solve_cap() const { return step_cap(scramble_max); }

  /// Paper table values for the phase.
  static PhaseConfig defaults(int phase);
  /// Defaults overridden by "key" and "phaseN.key" entries. Throws
  /// std::invalid_argument on unparsable or out-of-range values.
  static PhaseConfig from(const KeyValueConfig& cfg, int phase);
};

}  // namespace qube
