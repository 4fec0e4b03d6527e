#include "krl/nn.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace krl {

namespace {

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2)
    throw std::invalid_argument("MlpNet: need at least input and output sizes");
  for (int s : sizes)
    if (s < 1) throw std::invalid_argument("MlpNet: layer sizes must be >= 1");
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  if (!is) throw std::runtime_error("checkpoint: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double d) {
  put_u64(os, std::bit_cast<std::uint64_t>(d));
}

double get_f64(std::istream& is) {
  return std::bit_cast<double>(get_u64(is));
}

}  // namespace

MlpNet::MlpNet(std::vector<int> sizes, OutputKind out_kind, double out_scale,
               Rng& init_rng)
    : sizes_(std::move(sizes)), out_kind_(out_kind), out_scale_(out_scale) {
  check_sizes(sizes_);
  layers_.resize(sizes_.size() - 1);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const int fan_in = sizes_[l];
    const int fan_out = sizes_[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Layer& layer = layers_[l];
    layer.W.resize(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j)
        layer.W(i, j) = init_rng.uniform(-bound, bound);
    layer.b.resize(fan_out);
    for (int i = 0; i < fan_out; ++i) layer.b[i] = init_rng.uniform(-bound, bound);
  }
}

MlpNet MlpNet::zeros(std::vector<int> sizes, OutputKind out_kind,
                     double out_scale) {
  check_sizes(sizes);
  MlpNet net;
  net.sizes_ = std::move(sizes);
  net.out_kind_ = out_kind;
  net.out_scale_ = out_scale;
  net.layers_.resize(net.sizes_.size() - 1);
  for (std::size_t l = 0; l < net.layers_.size(); ++l) {
    net.layers_[l].W = Mat::Zero(net.sizes_[l + 1], net.sizes_[l]);
    net.layers_[l].b = Vec::Zero(net.sizes_[l + 1]);
  }
  return net;
}

Vec MlpNet::forward(const Vec& x) const {
  return forward(Mat(x)).col(0);
}

Mat MlpNet::forward(const Mat& X) const {
  Cache cache;
  return forward(X, cache);
}

Mat MlpNet::forward(const Mat& X, Cache& cache) const {
  if (X.rows() != input_dim())
    throw std::invalid_argument("MlpNet::forward: input dimension mismatch");
  if (!X.allFinite())
    throw std::invalid_argument("MlpNet::forward: non-finite input");

  const std::size_t L = layers_.size();
  cache.pre.resize(L);
  cache.act.resize(L + 1);
  cache.act[0] = X;
  for (std::size_t l = 0; l < L; ++l) {
    cache.pre[l] = (layers_[l].W * cache.act[l]).colwise() + layers_[l].b;
    if (l + 1 < L) {
      cache.act[l + 1] = cache.pre[l].cwiseMax(0.0);  // ReLU
    } else {
      switch (out_kind_) {
        case OutputKind::Identity:
          cache.act[l + 1] = cache.pre[l];
          break;
        case OutputKind::TanhScaled:
          cache.act[l + 1] = (out_scale_ * cache.pre[l].array().tanh()).matrix();
          break;
      }
    }
  }
  return cache.act[L];
}

MlpNet::Gradients MlpNet::backward(const Cache& cache,
                                   const Mat& output_grad) const {
  const std::size_t L = layers_.size();
  if (cache.act.size() != L + 1)
    throw std::invalid_argument("MlpNet::backward: stale forward cache");
  if (output_grad.rows() != output_dim() ||
      output_grad.cols() != cache.act[0].cols())
    throw std::invalid_argument("MlpNet::backward: output_grad shape mismatch");

  Gradients grads;
  grads.layers.resize(L);

  Mat dZ;
  switch (out_kind_) {
    case OutputKind::Identity:
      dZ = output_grad;
      break;
    case OutputKind::TanhScaled: {
      // d/dz [s tanh(z)] = s (1 - tanh^2 z) = s - A^2 / s
      const Mat& A = cache.act[L];
      dZ = output_grad.array() * (out_scale_ - A.array().square() / out_scale_);
      break;
    }
  }

  for (std::size_t l = L; l-- > 0;) {
    grads.layers[l].W = dZ * cache.act[l].transpose();
    grads.layers[l].b = dZ.rowwise().sum();
    Mat dA = layers_[l].W.transpose() * dZ;
    if (l > 0) {
      dZ = dA.array() * (cache.pre[l - 1].array() > 0.0).cast<double>();
    } else {
      grads.input = std::move(dA);
    }
  }
  return grads;
}

bool MlpNet::all_finite() const {
  for (const Layer& l : layers_)
    if (!l.W.allFinite() || !l.b.allFinite()) return false;
  return true;
}

void MlpNet::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  put_u64(os, sizes_.size());
  for (int s : sizes_) put_u64(os, static_cast<std::uint64_t>(s));
  for (const Layer& layer : layers_) {
    for (Eigen::Index i = 0; i < layer.W.rows(); ++i)
      for (Eigen::Index j = 0; j < layer.W.cols(); ++j)
        put_f64(os, layer.W(i, j));
    for (Eigen::Index i = 0; i < layer.b.size(); ++i) put_f64(os, layer.b[i]);
  }
  if (!os) throw std::runtime_error("checkpoint: write failed for '" + path + "'");
}

void MlpNet::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  const std::uint64_t count = get_u64(is);
  if (count != sizes_.size())
    throw std::runtime_error("checkpoint: layer count mismatch in '" + path + "'");
  for (int s : sizes_)
    if (get_u64(is) != static_cast<std::uint64_t>(s))
      throw std::runtime_error("checkpoint: layer size mismatch in '" + path + "'");
  for (Layer& layer : layers_) {
    for (Eigen::Index i = 0; i < layer.W.rows(); ++i)
      for (Eigen::Index j = 0; j < layer.W.cols(); ++j)
        layer.W(i, j) = get_f64(is);
    for (Eigen::Index i = 0; i < layer.b.size(); ++i) layer.b[i] = get_f64(is);
  }
}

AdamState::AdamState(const MlpNet& net, AdamConfig config) : config_(config) {
  m_.resize(net.layers().size());
  v_.resize(net.layers().size());
  for (std::size_t l = 0; l < m_.size(); ++l) {
    const Layer& layer = net.layers()[l];
    m_[l].W = Mat::Zero(layer.W.rows(), layer.W.cols());
    m_[l].b = Vec::Zero(layer.b.size());
    v_[l] = m_[l];
  }
}

void AdamState::step(MlpNet& net, const MlpNet::Gradients& grads) {
  if (grads.layers.size() != m_.size())
    throw std::invalid_argument("AdamState: gradient shape mismatch");
  for (const Layer& g : grads.layers)
    if (!g.W.allFinite() || !g.b.allFinite())
      throw std::runtime_error("AdamState: non-finite gradient");

  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (std::size_t l = 0; l < m_.size(); ++l) {
    Layer& layer = net.layers()[l];
    const Layer& g = grads.layers[l];
    auto update = [&](auto& p, auto& m, auto& v, const auto& grad) {
      m = config_.beta1 * m + (1.0 - config_.beta1) * grad;
      v = (config_.beta2 * v.array() + (1.0 - config_.beta2) * grad.array().square()).matrix();
      p.array() -=
          config_.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + config_.eps);
    };
    update(layer.W, m_[l].W, v_[l].W, g.W);
    update(layer.b, m_[l].b, v_[l].b, g.b);
  }
}

void soft_update(MlpNet& target, const MlpNet& online, double tau) {
  if (target.sizes() != online.sizes())
    throw std::invalid_argument("soft_update: architecture mismatch");
  for (std::size_t l = 0; l < target.layers().size(); ++l) {
    target.layers()[l].W =
        (1.0 - tau) * target.layers()[l].W + tau * online.layers()[l].W;
    target.layers()[l].b =
        (1.0 - tau) * target.layers()[l].b + tau * online.layers()[l].b;
  }
}

}  // namespace krl
