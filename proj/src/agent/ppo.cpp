#include "oran/agent/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oran/errors.hpp"

namespace oran::agent {

void PpoConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (!(clip_eps > 0.0 && clip_eps < 1.0)) throw std::invalid_argument("clip_eps must lie in (0, 1)");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (minibatch_size < 1) throw std::invalid_argument("minibatch_size must be >= 1");
  if (!(value_coef >= 0.0) || !(entropy_coef >= 0.0)) throw std::invalid_argument("loss coefficients must be >= 0");
  if (!(lr >= 0.0) || !std::isfinite(lr)) throw std::invalid_argument("lr must be finite and >= 0");
}

PreparedBatch PreparedBatch::subset(std::span<const std::size_t> rows) const {
  PreparedBatch out;
  out.states.resize(states.rows(), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    out.states.col(static_cast<Eigen::Index>(i)) = states.col(static_cast<Eigen::Index>(r));
    out.actions.push_back(actions[r]);
    out.old_log_probs.push_back(old_log_probs[r]);
    out.advantages.push_back(advantages[r]);
    out.returns.push_back(returns[r]);
  }
  return out;
}

PreparedBatch prepare_batch(std::span<const Trajectory> trajectories, double gamma, double lambda) {
  std::size_t n = 0;
  for (const auto& t : trajectories) n += t.steps.size();
  if (n == 0) throw EmptyBatch("no trajectory steps to learn from");

  PreparedBatch b;
  b.states.resize(kStateWidth, static_cast<Eigen::Index>(n));
  Eigen::Index col = 0;
  for (const auto& t : trajectories) {
    const auto adv = gae_advantages(t, gamma, lambda);
    for (std::size_t i = 0; i < t.steps.size(); ++i, ++col) {
      const auto& s = t.steps[i];
      for (int k = 0; k < kStateWidth; ++k) b.states(k, col) = s.state[static_cast<std::size_t>(k)];
      b.actions.push_back(s.action);
      b.old_log_probs.push_back(s.log_prob);
      b.advantages.push_back(adv[i]);
      b.returns.push_back(adv[i] + s.value);
    }
  }
  normalize_advantages(b.advantages);
  return b;
}

PpoLoss ppo_loss(const PolicyParams& params, const PreparedBatch& batch, const PpoConfig& config,
                 bool with_gradient) {
  const std::size_t n = batch.size();
  if (n == 0) throw EmptyBatch("empty minibatch");
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto n_actions = static_cast<Eigen::Index>(params.action_count());

  nn::Mlp::Tape actor_tape, critic_tape;
  const Eigen::MatrixXd logits = params.actor.forward(batch.states, actor_tape);
  const Eigen::MatrixXd values = params.critic.forward(batch.states, critic_tape);

  const double v_mean = params.value_norm.mean;
  const double v_scale = params.value_norm.scale();

  PpoLoss out;
  Eigen::MatrixXd d_logits = Eigen::MatrixXd::Zero(n_actions, static_cast<Eigen::Index>(n));
  Eigen::MatrixXd d_values(1, static_cast<Eigen::Index>(n));

  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    const Categorical dist =
        softmax(std::span<const double>(logits.col(c).data(), static_cast<std::size_t>(n_actions)));
    const std::size_t a = batch.actions[i];
    const double adv = batch.advantages[i];
    const double ratio = std::exp(dist.log_probs[a] - batch.old_log_probs[i]);
    const double clipped = std::clamp(ratio, 1.0 - config.clip_eps, 1.0 + config.clip_eps);
    const double surrogate = std::min(ratio * adv, clipped * adv);
    const double h = dist.entropy();
    const double target = (batch.returns[i] - v_mean) / v_scale;
    const double err = values(0, c) - target;

    out.policy -= surrogate * inv_n;
    out.value += err * err * inv_n;
    out.entropy += h * inv_n;

    if (!with_gradient) continue;
    // The unclipped branch carries the gradient unless the clip is binding.
    const bool unclipped_active = adv >= 0.0 ? ratio <= 1.0 + config.clip_eps : ratio >= 1.0 - config.clip_eps;
    const double d_ratio = unclipped_active ? -adv * inv_n : 0.0;
    for (Eigen::Index k = 0; k < n_actions; ++k) {
      const double p = dist.probs[static_cast<std::size_t>(k)];
      const double onehot = static_cast<std::size_t>(k) == a ? 1.0 : 0.0;
      // d(rho)/dz_k = rho (1[k=a] - p_k);  dH/dz_k = -p_k (log p_k + H)
      const double d_surr = d_ratio * ratio * (onehot - p);
      const double d_ent = -config.entropy_coef * inv_n * (-p * (dist.log_probs[static_cast<std::size_t>(k)] + h));
      d_logits(k, c) = d_surr + d_ent;
    }
    d_values(0, c) = config.value_coef * 2.0 * err * inv_n;
  }

  out.total = out.policy + config.value_coef * out.value - config.entropy_coef * out.entropy;
  if (with_gradient) {
    out.actor_grad = params.actor.backward(actor_tape, d_logits);
    out.critic_grad = params.critic.backward(critic_tape, d_values);
  }
  return out;
}

std::vector<EpochStats> ppo_update(PolicyParams& params, PpoOptimizer& optimizer,
                                   const PreparedBatch& batch, const PpoConfig& config, Rng& rng) {
  config.validate();
  if (batch.size() == 0) throw EmptyBatch("empty batch");
  std::vector<std::size_t> order(batch.size());
  std::vector<EpochStats> stats;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    EpochStats epoch_stats;
    double weight_sum = 0.0;
    const auto mb = static_cast<std::size_t>(config.minibatch_size);
    for (std::size_t start = 0; start < order.size(); start += mb) {
      const std::size_t end = std::min(order.size(), start + mb);
      const PreparedBatch minibatch =
          batch.subset(std::span<const std::size_t>(order.data() + start, end - start));
      const PpoLoss loss = ppo_loss(params, minibatch, config, true);
      optimizer.actor.step(params.actor, loss.actor_grad, config.lr);
      optimizer.critic.step(params.critic, loss.critic_grad, config.lr);

      const auto w = static_cast<double>(end - start);
      epoch_stats.policy_loss += loss.policy * w;
      epoch_stats.value_loss += loss.value * w;
      epoch_stats.entropy += loss.entropy * w;
      epoch_stats.total += loss.total * w;
      weight_sum += w;
    }
    epoch_stats.policy_loss /= weight_sum;
    epoch_stats.value_loss /= weight_sum;
    epoch_stats.entropy /= weight_sum;
    epoch_stats.total /= weight_sum;
    stats.push_back(epoch_stats);
  }
  return stats;
}

std::vector<EpochStats> ppo_update(PolicyParams& params, std::span<const Trajectory> trajectories,
                                   const PpoConfig& config, Rng& rng) {
  const PreparedBatch batch = prepare_batch(trajectories, config.gamma, config.lambda);
  PpoOptimizer optimizer(params);
  return ppo_update(params, optimizer, batch, config, rng);
}

void update_value_normalizer(PolicyParams& params, std::span<const double> returns) {
  const double old_mean = params.value_norm.mean;
  const double old_scale = params.value_norm.scale();
  params.value_norm.update(returns);
  const double new_mean = params.value_norm.mean;
  const double new_scale = params.value_norm.scale();
  // mean' + scale' * (w' h + b') == mean + scale * (w h + b)
  auto& out = params.critic.layers().back();
  out.weight *= old_scale / new_scale;
  out.bias = (out.bias.array() * old_scale + old_mean - new_mean) / new_scale;
}

}  // namespace oran::agent
