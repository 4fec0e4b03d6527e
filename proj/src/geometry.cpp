#include "krl/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace krl {

Reflection::Reflection(double theta_z, int dim) : theta_(theta_z), dim_(dim) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("Reflection: dim must be 2 or 3");
  if (!(theta_z >= 0.0 && theta_z < std::numbers::pi))
    throw std::invalid_argument("Reflection: theta_z must lie in [0, pi)");
  nx_ = -std::sin(theta_);
  ny_ = std::cos(theta_);
}

Vec Reflection::reflect_point(const Vec& p) const {
  if (p.size() != dim_)
    throw std::invalid_argument("Reflection: dimension mismatch");
  const double d = p[0] * nx_ + p[1] * ny_;
  Vec out = p;
  out[0] -= 2.0 * d * nx_;
  out[1] -= 2.0 * d * ny_;
  return out;
}

Mat Reflection::matrix() const {
  Vec n = Vec::Zero(dim_);
  n[0] = nx_;
  n[1] = ny_;
  return Mat::Identity(dim_, dim_) - 2.0 * n * n.transpose();
}

Reflection random_reflection(int dim, Rng& rng) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("random_reflection: dim must be 2 or 3");
  return Reflection(rng.uniform(0.0, std::numbers::pi), dim);
}

BallSampler::BallSampler(Vec center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (radius < 0.0) throw std::invalid_argument("BallSampler: negative radius");
  if (center_.size() == 0) throw std::invalid_argument("BallSampler: empty center");
}

Vec BallSampler::sample(Rng& rng) const {
  if (radius_ == 0.0) return center_;
  const int d = dim();
  Vec dir(d);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) dir[i] = rng.normal();
    norm2 = dir.squaredNorm();
  } while (norm2 < 1e-24);
  const double r = radius_ * std::pow(rng.uniform(), 1.0 / d);
  return center_ + dir * (r / std::sqrt(norm2));
}

}  // namespace krl
