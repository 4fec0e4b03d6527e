#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "krl/rng.hpp"
#include "krl/types.hpp"

namespace krl {

struct Layer {
  Mat W;  // out x in
  Vec b;
};

enum class OutputKind {
  Identity,    // critic head
  TanhScaled,  // actor head, output in [-scale, scale] per coordinate
};

// Dense ReLU network, 64-bit floats, explicit backprop.  Batches are stored
// column-wise (one sample per column).
class MlpNet {
 public:
  MlpNet(std::vector<int> sizes, OutputKind out_kind, double out_scale,
         Rng& init_rng);

  // All-zero parameters, mainly for tests.
  static MlpNet zeros(std::vector<int> sizes, OutputKind out_kind,
                      double out_scale);

  const std::vector<int>& sizes() const { return sizes_; }
  OutputKind output_kind() const { return out_kind_; }
  double output_scale() const { return out_scale_; }
  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

  Vec forward(const Vec& x) const;
  Mat forward(const Mat& X) const;

  // Pre-activations and activations kept for the backward pass.
  struct Cache {
    std::vector<Mat> pre;  // pre[l] = Z_{l+1}
    std::vector<Mat> act;  // act[0] = input, act[l+1] = A_{l+1}
  };

  Mat forward(const Mat& X, Cache& cache) const;

  struct Gradients {
    std::vector<Layer> layers;
    Mat input;  // d(loss)/d(input), needed for the actor update
  };

  // Exact gradients of the function represented by the cached forward pass,
  // given d(loss)/d(output).  ReLU uses subgradient 0 at exactly 0.
  Gradients backward(const Cache& cache, const Mat& output_grad) const;

  bool all_finite() const;

  // Checkpoint: little-endian u64 layer-size header followed by a flat
  // little-endian f64 stream (per layer: W row-major, then b).
  void save(const std::string& path) const;
  void load(const std::string& path);  // sizes must match

 private:
  MlpNet() = default;

  std::vector<int> sizes_;
  OutputKind out_kind_ = OutputKind::Identity;
  double out_scale_ = 1.0;
  std::vector<Layer> layers_;
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam with moments mirroring the network parameters.
class AdamState {
 public:
  AdamState(const MlpNet& net, AdamConfig config);

  const AdamConfig& config() const { return config_; }
  std::uint64_t step_count() const { return t_; }

  // One update in place.  Non-finite gradients are a hard error: they mean a
  // training bug and must surface immediately.
  void step(MlpNet& net, const MlpNet::Gradients& grads);

 private:
  AdamConfig config_;
  std::vector<Layer> m_, v_;
  std::uint64_t t_ = 0;
};

void soft_update(MlpNet& target, const MlpNet& online, double tau);

}  // namespace krl
