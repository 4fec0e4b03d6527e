#include "krl/env.hpp"

#include <cmath>
#include <stdexcept>

#include "krl/geometry.hpp"

namespace krl {

double compute_reward(const Vec& achieved, const Vec& desired,
                      double success_threshold) {
  if (achieved.size() != desired.size())
    throw std::invalid_argument("compute_reward: goal dimension mismatch");
  return ((achieved - desired).norm() <= success_threshold) ? 0.0 : -1.0;
}

PointReachEnv::PointReachEnv(Params params) : params_(params) {
  if (params_.dim != 2 && params_.dim != 3)
    throw std::invalid_argument("PointReachEnv: dim must be 2 or 3");
  if (params_.workspace_radius <= 0.0)
    throw std::invalid_argument("PointReachEnv: workspace_radius must be > 0");
  if (params_.step_scale <= 0.0)
    throw std::invalid_argument("PointReachEnv: step_scale must be > 0");
  if (params_.success_threshold <= 0.0)
    throw std::invalid_argument("PointReachEnv: success_threshold must be > 0");
  if (params_.action_bound <= 0.0)
    throw std::invalid_argument("PointReachEnv: action_bound must be > 0");
  if (params_.horizon < 1)
    throw std::invalid_argument("PointReachEnv: horizon must be >= 1");
  if (!(params_.gamma > 0.0 && params_.gamma < 1.0))
    throw std::invalid_argument("PointReachEnv: gamma must lie in (0, 1)");

  spec_ = GoalMdpSpec{params_.dim,
                      params_.dim,
                      params_.dim,
                      params_.action_bound,
                      params_.success_threshold,
                      params_.horizon,
                      params_.gamma};
  position_ = Vec::Zero(params_.dim);
  goal_ = Vec::Zero(params_.dim);
}

EnvState PointReachEnv::reset(Rng& rng) {
  const Vec origin = Vec::Zero(params_.dim);
  position_ = sample_in_ball(origin, params_.workspace_radius, rng);
  goal_ = sample_in_ball(origin, params_.workspace_radius, rng);
  steps_ = 0;
  return state();
}

EnvState PointReachEnv::reset_to(const Vec& position, const Vec& goal) {
  if (position.size() != params_.dim || goal.size() != params_.dim)
    throw std::invalid_argument("PointReachEnv::reset_to: dimension mismatch");
  if (position.norm() > params_.workspace_radius * (1.0 + 1e-12))
    throw std::invalid_argument("PointReachEnv::reset_to: position outside workspace");
  position_ = position;
  goal_ = goal;
  steps_ = 0;
  return state();
}

PointReachEnv::StepResult PointReachEnv::step(const Vec& action) {
  if (action.size() != params_.dim)
    throw std::invalid_argument("PointReachEnv::step: action dimension mismatch");
  if (!action.allFinite())
    throw std::invalid_argument("PointReachEnv::step: non-finite action");

  Vec executed = action;
  const double a_norm = executed.norm();
  if (a_norm > params_.action_bound)
    executed *= params_.action_bound / a_norm;

  Vec next = position_ + params_.step_scale * executed;
  const double p_norm = next.norm();
  if (p_norm > params_.workspace_radius)
    next *= params_.workspace_radius / p_norm;

  position_ = next;
  ++steps_;
  const double reward = compute_reward(position_, goal_, params_.success_threshold);
  const bool done = steps_ >= params_.horizon;
  return StepResult{state(), reward, done, std::move(executed)};
}

EnvState PointReachEnv::state() const {
  return EnvState{position_, project_goal(position_), goal_, steps_};
}

PointReachEnv::Params env_params(const std::string& name) {
  PointReachEnv::Params p;
  if (name == "reach2d") {
    p.dim = 2;
  } else if (name == "reach3d") {
    p.dim = 3;
  } else {
    throw std::invalid_argument("unknown environment '" + name +
                                "' (available: reach2d, reach3d)");
  }
  return p;
}

PointReachEnv make_env(const std::string& name) {
  return PointReachEnv(env_params(name));
}

}  // namespace krl
