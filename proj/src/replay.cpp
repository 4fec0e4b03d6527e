#include "krl/replay.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "krl/env.hpp"

namespace krl {

namespace {

bool exactly_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

void validate_trajectory(const Trajectory& traj) {
  if (traj.steps.empty())
    throw std::invalid_argument("trajectory: empty");
  const Vec& goal = traj.steps.front().desired_goal;
  for (int i = 0; i < traj.length(); ++i) {
    const Transition& t = traj.steps[i];
    if (t.step_index != i)
      throw std::invalid_argument("trajectory: step_index out of order at " +
                                  std::to_string(i));
    if (!exactly_equal(t.desired_goal, goal))
      throw std::invalid_argument("trajectory: desired goal changes at step " +
                                  std::to_string(i));
    if (i > 0 && !exactly_equal(traj.steps[i - 1].next_state, t.state))
      throw std::invalid_argument("trajectory: broken state chain at step " +
                                  std::to_string(i));
  }
}

Transition reflect_transition(const Transition& t, const Reflection& r) {
  Transition out;
  out.state = r.reflect_point(t.state);
  out.action = r.reflect_vector(t.action);
  out.next_state = r.reflect_point(t.next_state);
  out.achieved_goal = r.reflect_point(t.achieved_goal);
  out.desired_goal = r.reflect_point(t.desired_goal);
  out.step_index = t.step_index;
  out.reward = t.reward;  // isometry: distances, hence labels, are preserved
  return out;
}

Trajectory reflect_trajectory(const Trajectory& traj, const Reflection& r) {
  Trajectory out;
  out.steps.reserve(traj.steps.size());
  for (const Transition& t : traj.steps)
    out.steps.push_back(reflect_transition(t, r));
  return out;
}

RelabelSpec RelabelSpec::her(double success_threshold, double relabel_prob) {
  RelabelSpec s;
  s.applications = 1;
  s.epsilons = {0.0};
  s.relabel_prob = relabel_prob;
  s.success_threshold = success_threshold;
  return s;
}

RelabelSpec RelabelSpec::ladder(int k, double success_threshold,
                                double relabel_prob) {
  RelabelSpec s;
  s.applications = k;
  s.epsilons.clear();
  for (int i = 0; i < k; ++i)
    s.epsilons.push_back(i * success_threshold / k);
  s.relabel_prob = relabel_prob;
  s.success_threshold = success_threshold;
  return s;
}

void RelabelSpec::validate() const {
  if (applications < 1)
    throw std::invalid_argument("RelabelSpec: applications must be >= 1");
  if (static_cast<int>(epsilons.size()) != applications)
    throw std::invalid_argument(
        "RelabelSpec: need exactly one epsilon per application");
  if (success_threshold <= 0.0)
    throw std::invalid_argument("RelabelSpec: success_threshold must be > 0");
  for (double eps : epsilons)
    if (!(eps >= 0.0 && eps < success_threshold))
      throw std::invalid_argument(
          "RelabelSpec: each epsilon must satisfy 0 <= eps < success_threshold");
  if (!(relabel_prob >= 0.0 && relabel_prob <= 1.0))
    throw std::invalid_argument("RelabelSpec: relabel_prob must lie in [0, 1]");
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0)
    throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
}

void ReplayBuffer::store(Trajectory traj) {
  validate_trajectory(traj);
  if (length_ == 0) {
    length_ = traj.length();
  } else if (traj.length() != length_) {
    throw std::invalid_argument(
        "ReplayBuffer: all stored trajectories must share one length");
  }
  if (ring_.size() < capacity_) {
    ring_.push_back(std::move(traj));
  } else {
    ring_[next_] = std::move(traj);
    next_ = (next_ + 1) % capacity_;
  }
  ++inserted_;
}

void ReplayBuffer::store_with_ker(const Trajectory& traj, int n_reflections,
                                  Rng& rng) {
  if (n_reflections < 0)
    throw std::invalid_argument("store_with_ker: negative reflection count");
  store(traj);
  const int dim = static_cast<int>(traj.steps.front().state.size());
  for (int i = 0; i < n_reflections; ++i) {
    const Reflection r = random_reflection(dim, rng);
    store(reflect_trajectory(traj, r));
  }
}

void ReplayBuffer::store_with_ker(const Trajectory& traj,
                                  const std::vector<Reflection>& planes) {
  store(traj);
  for (const Reflection& r : planes) store(reflect_trajectory(traj, r));
}

const Trajectory& ReplayBuffer::trajectory(std::uint32_t slot) const {
  if (slot >= ring_.size())
    throw std::out_of_range("ReplayBuffer: trajectory slot out of range");
  return ring_[slot];
}

std::optional<std::vector<SampledTransition>> ReplayBuffer::sample_minibatch(
    std::size_t batch_size, Rng& rng) const {
  if (ring_.empty()) return std::nullopt;
  std::vector<SampledTransition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    const auto slot = static_cast<std::uint32_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(ring_.size()) - 1));
    const auto step = static_cast<std::size_t>(rng.uniform_int(0, length_ - 1));
    batch.push_back(SampledTransition{ring_[slot].steps[step], slot});
  }
  return batch;
}

std::vector<Transition> ger_relabel(const std::vector<SampledTransition>& batch,
                                    const RelabelSpec& spec,
                                    const ReplayBuffer& buffer, Rng& rng) {
  spec.validate();
  std::vector<Transition> out;
  out.reserve(batch.size() * spec.applications);
  for (int copy = 0; copy < spec.applications; ++copy) {
    const double eps = spec.epsilons[copy];
    for (const SampledTransition& s : batch) {
      Transition t = s.data;
      if (rng.uniform() < spec.relabel_prob) {
        const Trajectory& traj = buffer.trajectory(s.traj_slot);
        const int last = traj.length() - 1;
        const int future =
            static_cast<int>(rng.uniform_int(t.step_index, last));
        const Vec& center = traj.steps[future].achieved_goal;
        t.desired_goal = (eps > 0.0) ? sample_in_ball(center, eps, rng) : center;
      }
      t.reward =
          compute_reward(t.achieved_goal, t.desired_goal, spec.success_threshold);
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Transition> minibatch_ker(std::vector<Transition> batch, Rng& rng) {
  for (Transition& t : batch) {
    const int dim = static_cast<int>(t.state.size());
    const Reflection r = random_reflection(dim, rng);
    t = reflect_transition(t, r);
  }
  return batch;
}

}  // namespace krl
