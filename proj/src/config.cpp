#include "qube/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qube {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw std::invalid_argument("config " + key + ": not a number: '" + v + "'");
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != static_cast<double>(static_cast<long long>(d))) throw std::invalid_argument("config " + key + ": not an integer");
  return static_cast<int>(d);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  KeyValueConfig cfg = parse(ss.str());
  cfg.base_dir_ = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return cfg;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> KeyValueConfig::get_phase(int phase, const std::string& key) const {
  if (auto v = get("phase" + std::to_string(phase) + "." + key)) return v;
  return get(key);
}

PhaseConfig PhaseConfig::defaults(int phase) {
  if (phase < 1 || phase > 4) throw std::invalid_argument("phase must be 1..4");
  PhaseConfig c;
  c.phase = phase;
  static constexpr int kHidden[4][2] = {{100, 50}, {35, 16}, {200, 100}, {310, 115}};
  c.hidden1 = kHidden[phase - 1][0];
  c.hidden2 = kHidden[phase - 1][1];
  if (phase == 3) {
    c.random_action_decay = 0.999995;
    c.step_rule = StepRule::TimesTwo;
  }
  return c;
}

PhaseConfig PhaseConfig::from(const KeyValueConfig& cfg, int phase) {
  PhaseConfig c = defaults(phase);
  auto num = [&](const char* key, double& out) {
    if (auto v = cfg.get_phase(phase, key)) out = to_double(key, *v);
  };
  auto integer = [&](const char* key, int& out) {
    if (auto v = cfg.get_phase(phase, key)) out = to_int(key, *v);
  };
  num("learning_rate", c.learning_rate);
  num("random_action_decay", c.random_action_decay);
  num("epsilon_floor", c.epsilon_floor);
  num("gamma", c.gamma);
  num("premium", c.premium);
  integer("target_update_episodes", c.target_update_episodes);
  integer("batch_size", c.batch_size);
  integer("memory_size", c.memory_size);
  integer("scramble_min", c.scramble_min);
  integer("scramble_max", c.scramble_max);
  integer("episodes", c.episodes);
  integer("success_window", c.success_window);
  num("stop_success", c.stop_success);
  integer("hidden1", c.hidden1);
  integer("hidden2", c.hidden2);
  if (auto v = cfg.get_phase(phase, "step_rule")) {
    if (*v == "plus5") c.step_rule = StepRule::PlusFive;
    else if (*v == "times2") c.step_rule = StepRule::TimesTwo;
    else throw std::invalid_argument("config step_rule: expected plus5 or times2");
  }

  if (!(c.learning_rate > 0)) throw std::invalid_argument("learning_rate must be > 0");
  if (!(c.random_action_decay > 0 && c.random_action_decay < 1)) throw std::invalid_argument("random_action_decay must be in (0,1)");
  if (!(c.epsilon_floor >= 0 && c.epsilon_floor < 1)) throw std::invalid_argument("epsilon_floor must be in [0,1)");
  if (!(c.gamma >= 0 && c.gamma < 1)) throw std::invalid_argument("gamma must be in [0,1)");
  if (c.target_update_episodes < 1 || c.batch_size < 1 || c.memory_size < c.batch_size)
    throw std::invalid_argument("need target_update_episodes >= 1 and memory_size >= batch_size >= 1");
  if (c.scramble_min < 1 || c.scramble_max < c.scramble_min) throw std::invalid_argument("need 1 <= scramble_min <= scramble_max");
  if (c.hidden1 < 1 || c.hidden2 < 1) throw std::invalid_argument("hidden1 and hidden2 must be >= 1");
  if (c.episodes < 1 || c.success_window < 1) throw std::invalid_argument("episodes and success_window must be >= 1");
  return c;
}

}  // namespace qube
