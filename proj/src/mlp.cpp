#include "qube/mlp.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace qube {

std::vector<int> phase_dims(int phase, int action_count) {
  switch (phase) {
    case 1: return {12, 100, 50, action_count};
    case 2: return {16, 35, 16, action_count};
    case 3: return {24, 200, 100, action_count};
    case 4: return {36, 310, 115, action_count};
    default: throw std::invalid_argument("phase must be 1..4");
  }
}

Mlp::Mlp(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.size() != 4) throw std::invalid_argument("MLP needs exactly four layer sizes (two hidden layers)");
  for (int d : dims_)
    if (d <= 0) throw std::invalid_argument("MLP layer sizes must be positive");
  for (std::size_t k = 0; k + 1 < dims_.size(); ++k) {
    w_.push_back(Eigen::MatrixXd::Zero(dims_[k + 1], dims_[k]));
    b_.push_back(Eigen::VectorXd::Zero(dims_[k + 1]));
  }
}

Mlp Mlp::init(std::vector<int> dims, std::mt19937_64& rng) {
  Mlp m(std::move(dims));
  for (auto& w : m.w_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(w.cols()));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = u(rng);
  }
  return m;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) n += w_[k].size() + b_[k].size();
  return n;
}

void Mlp::check_input(Eigen::Index rows) const {
  if (rows != input_size())
    throw std::invalid_argument("input size " + std::to_string(rows) + " != " + std::to_string(input_size()));
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  check_input(x.size());
  Eigen::VectorXd h = x;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    h = w_[k] * h + b_[k];
    if (k + 1 < w_.size()) h = h.cwiseMax(0.0);
  }
  return h;
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& x) const {
  check_input(x.rows());
  Eigen::MatrixXd h = x;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    Eigen::MatrixXd z = w_[k] * h;
    z.colwise() += b_[k];
    if (k + 1 < w_.size()) z = z.cwiseMax(0.0);
    h = std::move(z);
  }
  return h;
}

double Mlp::loss_and_gradient(const Eigen::MatrixXd& x, const std::vector<int>& actions,
                              const Eigen::VectorXd& targets, MlpGradients& grad) const {
  check_input(x.rows());
  const Eigen::Index n = x.cols();
  if (static_cast<Eigen::Index>(actions.size()) != n || targets.size() != n)
    throw std::invalid_argument("batch size mismatch");

  std::vector<Eigen::MatrixXd> act{x};  // post-activation per layer
  for (std::size_t k = 0; k < w_.size(); ++k) {
    Eigen::MatrixXd z = w_[k] * act.back();
    z.colwise() += b_[k];
    if (k + 1 < w_.size()) z = z.cwiseMax(0.0);
    act.push_back(std::move(z));
  }

  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(output_size(), n);
  double loss = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int a = actions[i];
    if (a < 0 || a >= output_size()) throw std::invalid_argument("action index out of range");
    const double err = act.back()(a, i) - targets(i);
    loss += err * err;
    delta(a, i) = 2.0 * err / static_cast<double>(n);
  }
  loss /= static_cast<double>(n);

  grad.w.resize(w_.size());
  grad.b.resize(b_.size());
  for (std::size_t k = w_.size(); k-- > 0;) {
    grad.w[k].noalias() = delta * act[k].transpose();
    grad.b[k] = delta.rowwise().sum();
    if (k > 0) {
      Eigen::MatrixXd back = w_[k].transpose() * delta;
      delta = back.cwiseProduct((act[k].array() > 0.0).cast<double>().matrix());
    }
  }
  return loss;
}

double Mlp::loss(const Eigen::MatrixXd& x, const std::vector<int>& actions, const Eigen::VectorXd& targets) const {
  const Eigen::MatrixXd q = forward_batch(x);
  double s = 0;
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double e = q(actions[i], i) - targets(i);
    s += e * e;
  }
  return s / static_cast<double>(q.cols());
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.dims_ != b.dims_) return false;
  for (std::size_t k = 0; k < a.w_.size(); ++k)
    if (a.w_[k] != b.w_[k] || a.b_[k] != b.b_[k]) return false;
  return true;
}

Adam::Adam(const Mlp& model, double beta1, double beta2, double eps) : beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (std::size_t k = 0; k < model.weights().size(); ++k) {
    m_.w.push_back(Eigen::MatrixXd::Zero(model.weights()[k].rows(), model.weights()[k].cols()));
    m_.b.push_back(Eigen::VectorXd::Zero(model.biases()[k].size()));
  }
  v_ = m_;
}

void Adam::update(Mlp& model, const MlpGradients& g, double lr) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto step = [&](auto& param, auto& m, auto& v, const auto& grad) {
    m = beta1_ * m + (1.0 - beta1_) * grad;
    v = beta2_ * v + (1.0 - beta2_) * grad.cwiseProduct(grad);
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  };
  for (std::size_t k = 0; k < g.w.size(); ++k) {
    step(model.weights()[k], m_.w[k], v_.w[k], g.w[k]);
    step(model.biases()[k], m_.b[k], v_.b[k], g.b[k]);
  }
}

double sgd_step(Mlp& model, Adam& adam, const Eigen::MatrixXd& x, const std::vector<int>& actions,
                const Eigen::VectorXd& targets, double lr) {
  if (!(lr > 0)) throw std::invalid_argument("learning rate must be > 0");
  MlpGradients g;
  const double loss = model.loss_and_gradient(x, actions, targets, g);
  if (!std::isfinite(loss)) throw TrainingDiverged("non-finite loss " + std::to_string(loss));
  adam.update(model, g, lr);
  return loss;
}

int argmax(const Eigen::VectorXd& q) {
  if (q.size() == 0) throw std::invalid_argument("argmax of empty vector");
  int best = 0;
  for (Eigen::Index i = 1; i < q.size(); ++i)
    if (q(i) > q(best)) best = static_cast<int>(i);
  return best;
}

Eigen::VectorXd td_targets(const Mlp& online, const Mlp& target, const Eigen::VectorXd& rewards,
                           const Eigen::MatrixXd& next_x, const std::vector<bool>& terminal, double gamma) {
  if (online.dims() != target.dims()) throw std::invalid_argument("online/target dims differ");
  const Eigen::Index n = rewards.size();
  if (next_x.cols() != n || static_cast<Eigen::Index>(terminal.size()) != n)
    throw std::invalid_argument("batch size mismatch");
  Eigen::VectorXd y = rewards;
  if (gamma == 0.0) return y;
  const Eigen::MatrixXd q_sel = online.forward_batch(next_x);
  const Eigen::MatrixXd q_eval = target.forward_batch(next_x);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (terminal[i]) continue;
    y(i) += gamma * q_eval(argmax(q_sel.col(i)), i);
  }
  return y;
}

namespace {

constexpr char kMagic[8] = {'Q', 'U', 'B', 'E', 'M', 'L', 'P', '1'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host assumed");
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b) : bytes_(b) {}
  template <typename T>
  T get(const char* what) {
    if (pos_ + sizeof(T) > bytes_.size()) throw ModelFileError(std::string("truncated file reading ") + what, pos_);
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc(const std::uint8_t* data, std::size_t n) {
  return static_cast<std::uint32_t>(::crc32(::crc32(0L, Z_NULL, 0), data, static_cast<uInt>(n)));
}

}  // namespace

std::vector<std::uint8_t> serialize(const Mlp& model, int phase) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 8);
  out.push_back(static_cast<std::uint8_t>(phase));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(model.dims().size()));
  for (int d : model.dims()) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d));
  for (std::size_t k = 0; k < model.weights().size(); ++k) {
    const auto& w = model.weights()[k];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) put_le<double>(out, w(r, c));
    for (Eigen::Index r = 0; r < model.biases()[k].size(); ++r) put_le<double>(out, model.biases()[k](r));
  }
  put_le<std::uint32_t>(out, crc(out.data(), out.size()));
  return out;
}

Mlp deserialize(const std::vector<std::uint8_t>& bytes, int expected_phase, int* phase_out) {
  Reader rd(bytes);
  for (char c : kMagic)
    if (rd.get<char>("magic") != c) throw ModelFileError("bad magic, not a QUBEMLP1 model", rd.pos() - 1);
  const int phase = rd.get<std::uint8_t>("phase");
  if (expected_phase != 0 && phase != expected_phase)
    throw ModelFileError("model is for phase " + std::to_string(phase) + ", expected " + std::to_string(expected_phase),
                         rd.pos() - 1);
  const auto layers = rd.get<std::uint32_t>("layer count");
  if (layers != 4) throw ModelFileError("layer count " + std::to_string(layers) + ", expected 4", rd.pos() - 4);
  std::vector<int> dims;
  for (std::uint32_t i = 0; i < layers; ++i) {
    const auto d = rd.get<std::uint32_t>("dims");
    if (d == 0 || d > 100000) throw ModelFileError("implausible layer size " + std::to_string(d), rd.pos() - 4);
    dims.push_back(static_cast<int>(d));
  }
  std::size_t params = 0;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) params += static_cast<std::size_t>(dims[k + 1]) * (dims[k] + 1);
  const std::size_t expected_size = rd.pos() + params * sizeof(double) + sizeof(std::uint32_t);
  if (bytes.size() < expected_size)
    throw ModelFileError("truncated file: " + std::to_string(bytes.size()) + " bytes, need " + std::to_string(expected_size),
                         bytes.size());
  if (bytes.size() > expected_size) throw ModelFileError("trailing bytes after checksum", expected_size);

  Mlp m(dims);
  for (std::size_t k = 0; k < m.weights().size(); ++k) {
    auto& w = m.weights()[k];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rd.get<double>("weights");
    for (Eigen::Index r = 0; r < m.biases()[k].size(); ++r) m.biases()[k](r) = rd.get<double>("biases");
  }
  const std::size_t crc_at = rd.pos();
  const auto stored = rd.get<std::uint32_t>("checksum");
  if (stored != crc(bytes.data(), crc_at)) throw ModelFileError("checksum mismatch", crc_at);
  if (phase_out) *phase_out = phase;
  return m;
}

void save(const Mlp& model, int phase, const std::filesystem::path& path) {
  const auto bytes = serialize(model, phase);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write model " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Mlp load(const std::filesystem::path& path, int expected_phase, int* phase_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError("cannot open " + path.string(), 0);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes, expected_phase, phase_out);
}

}  // namespace qube
