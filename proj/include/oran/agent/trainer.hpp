#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "oran/agent/env.hpp"
#include "oran/agent/policy.hpp"
#include "oran/agent/ppo.hpp"

namespace oran::agent {

struct TrainConfig {
  PpoConfig ppo;
  int iterations = 100;
  int horizon = 40;  // control intervals per rollout
  std::uint64_t seed = 1;
};

struct CurvePoint {
  int iteration = 0;
  double mean_step_reward = 0.0;
  double policy_loss = 0.0;  // last epoch
  double value_loss = 0.0;
  double entropy = 0.0;
};

struct TrainResult {
  PolicyParams params;
  std::vector<CurvePoint> curve;
};

/// Collects one rollout with stochastic actions. The rollout is cut after
/// `horizon` steps and bootstrapped from the critic.
Trajectory collect_rollout(ClosedLoopEnv& env, const PolicyParams& params, int horizon,
                           std::uint64_t reset_seed, Rng& rng);

using ProgressFn = std::function<void(const CurvePoint&)>;

/// Alternates a fresh-seeded rollout with a PPO update, `iterations` times.
TrainResult train(ClosedLoopEnv& env, const TrainConfig& config, const ProgressFn& progress = {});
/// Continues from given parameters.
TrainResult train(ClosedLoopEnv& env, PolicyParams initial, const TrainConfig& config,
                  const ProgressFn& progress = {});

inline constexpr const char* kCurveCsvHeader = "iteration,mean_step_reward,policy_loss,value_loss,entropy";
void write_training_curve(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace oran::agent
