#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "krl/geometry.hpp"
#include "krl/rng.hpp"
#include "krl/types.hpp"

namespace krl {

struct Transition {
  Vec state;
  Vec action;  // executed, post-clip
  Vec next_state;
  Vec achieved_goal;  // projection of next_state
  Vec desired_goal;
  int step_index = 0;
  double reward = -1.0;
};

// One fixed-length episode sharing a single desired goal.
struct Trajectory {
  std::vector<Transition> steps;

  int length() const { return static_cast<int>(steps.size()); }
};

// Throws if the chaining/consistency invariants are violated.
void validate_trajectory(const Trajectory& traj);

Transition reflect_transition(const Transition& t, const Reflection& r);
Trajectory reflect_trajectory(const Trajectory& traj, const Reflection& r);

// A sampled transition keeps a handle to its source trajectory so that the
// future-strategy relabeling can look up later achieved goals.
struct SampledTransition {
  Transition data;
  std::uint32_t traj_slot = 0;
};

// GER configuration: k relabeling applications with thresholds eps_1..eps_k,
// each strictly below the task success threshold.  eps_i = 0 reproduces HER's
// future strategy exactly.
struct RelabelSpec {
  int applications = 1;  // k
  std::vector<double> epsilons = {0.0};
  double relabel_prob = 0.8;
  double success_threshold = 0.05;  // eps_R, used to recompute rewards

  // Plain HER: one application, threshold zero.
  static RelabelSpec her(double success_threshold, double relabel_prob = 0.8);
  // Evenly spaced ladder eps_i = i * eps_R / k, i = 0..k-1 (one zero entry).
  static RelabelSpec ladder(int k, double success_threshold,
                            double relabel_prob = 0.8);

  void validate() const;
};

// Bounded trajectory store.  Oldest trajectory is evicted first when full.
// All stored trajectories must share one length so that uniform sampling over
// (trajectory, step) pairs stays exact.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void store(Trajectory traj);

  // Stores the original plus n reflected copies, each under a freshly drawn
  // random reflection (original first, then the copies in draw order).
  void store_with_ker(const Trajectory& traj, int n_reflections, Rng& rng);

  // Fixed-plane variant: one reflected copy per given plane.
  void store_with_ker(const Trajectory& traj,
                      const std::vector<Reflection>& planes);

  std::size_t size() const { return ring_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t total_inserted() const { return inserted_; }
  int trajectory_length() const { return length_; }

  const Trajectory& trajectory(std::uint32_t slot) const;

  // Uniform over (trajectory, step) pairs; nullopt when the buffer is empty
  // (the caller is expected to skip the update).
  std::optional<std::vector<SampledTransition>> sample_minibatch(
      std::size_t batch_size, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::vector<Trajectory> ring_;
  std::size_t next_ = 0;  // overwrite position once full
  std::uint64_t inserted_ = 0;
  int length_ = 0;
};

// Returns k relabeled copies of the batch, concatenated (size k * batch).
// Copy i relabels each transition with probability relabel_prob: the new goal
// is drawn uniformly in the ball of radius eps_i around the achieved goal of
// a uniformly chosen future step (including the transition itself) of its
// source trajectory.  Every output reward is recomputed against its goal.
//
// Draw order per transition: one uniform for the relabel decision, then one
// integer for the future index, then the ball draws (none when eps_i = 0).
// With eps = 0 this consumes exactly the draws of a direct HER future-strategy
// implementation, making the two bit-identical under a shared seed.
std::vector<Transition> ger_relabel(const std::vector<SampledTransition>& batch,
                                    const RelabelSpec& spec,
                                    const ReplayBuffer& buffer, Rng& rng);

// Ablation mode: reflect every transition in the batch by a freshly drawn
// random reflection.  Rewards are unchanged (reflections are isometries).
std::vector<Transition> minibatch_ker(std::vector<Transition> batch, Rng& rng);

}  // namespace krl
