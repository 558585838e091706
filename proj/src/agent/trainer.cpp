#include "oran/agent/trainer.hpp"

#include <ostream>
#include <stdexcept>

#include "oran/format.hpp"

namespace oran::agent {

Trajectory collect_rollout(ClosedLoopEnv& env, const PolicyParams& params, int horizon,
                           std::uint64_t reset_seed, Rng& rng) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  Trajectory traj;
  State state = env.reset(reset_seed);
  for (int t = 0; t < horizon; ++t) {
    const Categorical dist = actor_forward(params, state);
    const SampledAction act = sample_action(dist, rng);
    TrajectoryStep step;
    step.state = state;
    step.action = act.index;
    step.log_prob = act.log_prob;
    step.value = critic_forward(params, state);
    const EnvStep next = env.step(act.index);
    step.reward = next.reward;
    traj.steps.push_back(step);
    state = next.state;
  }
  traj.terminal = false;
  traj.bootstrap_value = critic_forward(params, state);
  return traj;
}

TrainResult train(ClosedLoopEnv& env, const TrainConfig& config, const ProgressFn& progress) {
  Rng init = Rng::derive(config.seed, 0x1417);
  return train(env, PolicyParams::initial(env.action_space().size(), init), config, progress);
}

TrainResult train(ClosedLoopEnv& env, PolicyParams initial, const TrainConfig& config,
                  const ProgressFn& progress) {
  config.ppo.validate();
  if (config.iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (initial.action_count() != env.action_space().size())
    throw std::invalid_argument("policy output width does not match the action space");

  TrainResult result{std::move(initial), {}};
  PpoOptimizer optimizer(result.params);
  Rng act_rng = Rng::derive(config.seed, 0xAC7);
  Rng update_rng = Rng::derive(config.seed, 0x0DD);

  for (int it = 0; it < config.iterations; ++it) {
    const Trajectory traj =
        collect_rollout(env, result.params, config.horizon, Rng::mix(config.seed, static_cast<std::uint64_t>(it)), act_rng);
    const PreparedBatch batch =
        prepare_batch(std::span<const Trajectory>(&traj, 1), config.ppo.gamma, config.ppo.lambda);
    update_value_normalizer(result.params, batch.returns);
    const auto epochs = ppo_update(result.params, optimizer, batch, config.ppo, update_rng);

    CurvePoint p;
    p.iteration = it;
    for (const auto& s : traj.steps) p.mean_step_reward += s.reward;
    p.mean_step_reward /= static_cast<double>(traj.steps.size());
    p.policy_loss = epochs.back().policy_loss;
    p.value_loss = epochs.back().value_loss;
    p.entropy = epochs.back().entropy;
    result.curve.push_back(p);
    if (progress) progress(p);
  }
  return result;
}

void write_training_curve(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << kCurveCsvHeader << '\n';
  for (const auto& p : curve)
    out << p.iteration << ',' << format_double(p.mean_step_reward) << ',' << format_double(p.policy_loss) << ','
        << format_double(p.value_loss) << ',' << format_double(p.entropy) << '\n';
}

}  // namespace oran::agent
