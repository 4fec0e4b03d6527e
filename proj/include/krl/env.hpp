#pragma once

#include <string>

#include "krl/rng.hpp"
#include "krl/types.hpp"

namespace krl {

// Multi-goal MDP description: sparse reward 1[d(achieved, goal) <= eps_R] - 1.
struct GoalMdpSpec {
  int state_dim = 0;
  int action_dim = 0;
  int goal_dim = 0;
  double action_bound = 1.0;       // a_max
  double success_threshold = 0.05; // eps_R
  int horizon = 50;
  double gamma = 0.98;
};

struct EnvState {
  Vec observation;
  Vec achieved_goal;  // projection of the observation into goal space
  Vec desired_goal;
  int steps_elapsed = 0;
};

// Sparse reward, shared by the environment step and by relabeling.
// d = eps_R counts as success (reward 0); anything beyond is -1.
double compute_reward(const Vec& achieved, const Vec& desired,
                      double success_threshold);

// Point mass moving inside a ball-shaped workspace.  The ball (rather than a
// box) is what makes the dynamics equivariant under *every* vertical-plane
// reflection through the origin, which KER depends on.  Actions are clipped
// to the Euclidean ball |a| <= a_max for the same reason; per-coordinate
// clipping would commute only with reflections at multiples of pi/4.
class PointReachEnv {
 public:
  struct Params {
    int dim = 2;                    // workspace dimension (2 or 3)
    double workspace_radius = 1.0;
    double step_scale = 0.05;       // alpha: displacement per unit action
    double success_threshold = 0.05;
    double action_bound = 1.0;
    int horizon = 50;
    double gamma = 0.98;
  };

  explicit PointReachEnv(Params params);

  const GoalMdpSpec& spec() const { return spec_; }
  const Params& params() const { return params_; }

  // Initial position and goal drawn independently, uniform in the workspace
  // ball (position first, then goal).
  EnvState reset(Rng& rng);

  // Deterministic entry point used by replay-validation and tests.
  EnvState reset_to(const Vec& position, const Vec& goal);

  struct StepResult {
    EnvState state;
    double reward;
    bool done;            // time-limit signal only, never truncates bootstraps
    Vec executed_action;  // post-clip
  };

  StepResult step(const Vec& action);

  // Identity on position coordinates; commutes with reflections.
  Vec project_goal(const Vec& state) const { return state; }

  EnvState state() const;

 private:
  Params params_;
  GoalMdpSpec spec_;
  Vec position_;
  Vec goal_;
  int steps_ = 0;
};

// "reach2d" or "reach3d", with optional overrides applied on top.
PointReachEnv::Params env_params(const std::string& name);
PointReachEnv make_env(const std::string& name);

}  // namespace krl
