#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oran/agent/policy.hpp"

namespace oran::agent {

struct TrajectoryStep {
  State state{};
  std::size_t action = 0;
  double reward = 0.0;
  double value = 0.0;  // critic estimate when the action was taken, reward units
  double log_prob = 0.0;
};

/// One rollout. When the rollout was cut rather than terminated, the
/// return is bootstrapped from bootstrap_value (the critic at the cut).
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  bool terminal = false;
  double bootstrap_value = 0.0;
};

/// G_t = r_t + gamma * G_{t+1}, with G after the last step = tail.
std::vector<double> discounted_return(std::span<const double> rewards, double gamma, double tail = 0.0);

/// delta_t = r_t + gamma * V_{t+1} - V_t and A_t = delta_t + gamma * lambda * A_{t+1},
/// where V after the last step is next_value. Not normalised.
std::vector<double> gae_advantages(std::span<const double> rewards, std::span<const double> values,
                                   double next_value, double gamma, double lambda);
std::vector<double> gae_advantages(const Trajectory& trajectory, double gamma, double lambda);

/// In place: zero mean, unit variance (left centred only if the variance is ~0).
void normalize_advantages(std::vector<double>& advantages);

}  // namespace oran::agent
