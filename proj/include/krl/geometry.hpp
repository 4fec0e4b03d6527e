#pragma once

#include "krl/rng.hpp"
#include "krl/types.hpp"

namespace krl {

// Reflection across the vertical plane obtained by rotating the xz plane by
// theta_z about the z axis.  The induced map is the Householder isometry
//   p |-> p - 2 (p . n) n,   n = (-sin theta_z, cos theta_z [, 0]),
// an involution with determinant -1 that leaves the z coordinate untouched.
//
// theta_z lives in [0, pi): a reflection plane is unoriented, so theta and
// theta + pi denote the same symmetry.
class Reflection {
 public:
  Reflection(double theta_z, int dim);

  double theta_z() const { return theta_; }
  int dim() const { return dim_; }

  Vec reflect_point(const Vec& p) const;
  // Actions and velocities transform by the same linear map as positions.
  Vec reflect_vector(const Vec& v) const { return reflect_point(v); }

  // Dense I - 2 n n^T, mainly for oracle checks.
  Mat matrix() const;

 private:
  double theta_;
  int dim_;
  double nx_, ny_;  // plane normal; its z component is identically zero
};

// Fresh symmetry with theta_z ~ U[0, pi).
Reflection random_reflection(int dim, Rng& rng);

// Uniform sampling in the closed ball { x : |x - center| <= radius }.
// Radius zero returns the center exactly and consumes no randomness.
class BallSampler {
 public:
  BallSampler(Vec center, double radius);

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  int dim() const { return static_cast<int>(center_.size()); }

  // Direction from normalized Gaussians, radius scaled by radius * u^(1/dim).
  Vec sample(Rng& rng) const;

 private:
  Vec center_;
  double radius_;
};

inline Vec sample_in_ball(const Vec& center, double radius, Rng& rng) {
  return BallSampler(center, radius).sample(rng);
}

}  // namespace krl
