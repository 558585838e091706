#include "oran/agent/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oran::agent {

double ValueNormalizer::scale() const {
  if (count < 2.0) return 1.0;
  const double sd = std::sqrt(m2 / count);
  return sd > 1e-8 ? sd : 1.0;
}

void ValueNormalizer::update(std::span<const double> returns) {
  // Chan et al. parallel merge of (count, mean, m2).
  if (returns.empty()) return;
  const double n = static_cast<double>(returns.size());
  double batch_mean = 0.0;
  for (double r : returns) batch_mean += r;
  batch_mean /= n;
  double batch_m2 = 0.0;
  for (double r : returns) batch_m2 += (r - batch_mean) * (r - batch_mean);
  const double total = count + n;
  const double delta = batch_mean - mean;
  mean += delta * n / total;
  m2 += batch_m2 + delta * delta * count * n / total;
  count = total;
}

PolicyParams PolicyParams::initial(std::size_t n_actions, Rng& rng) {
  std::vector<int> actor_widths{kStateWidth}, critic_widths{kStateWidth};
  for (int l = 0; l < kHiddenLayers; ++l) {
    actor_widths.push_back(kHiddenWidth);
    critic_widths.push_back(kHiddenWidth);
  }
  actor_widths.push_back(static_cast<int>(n_actions));
  critic_widths.push_back(1);
  PolicyParams p;
  // Small output layer: the initial policy is close to uniform.
  p.actor = nn::Mlp(actor_widths, nn::Activation::Tanh, nn::Activation::Identity, rng, 0.01);
  p.critic = nn::Mlp(critic_widths, nn::Activation::Tanh, nn::Activation::Identity, rng);
  return p;
}

double Categorical::entropy() const {
  double h = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > 0.0) h -= probs[i] * log_probs[i];
  return h;
}

Categorical softmax(std::span<const double> logits) {
  Categorical out;
  if (logits.empty()) return out;
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  out.probs.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out.probs[i] = std::exp(logits[i] - top);
    sum += out.probs[i];
  }
  const double log_sum = std::log(sum);
  out.log_probs.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out.probs[i] /= sum;
    out.log_probs[i] = logits[i] - top - log_sum;
  }
  return out;
}

Eigen::VectorXd to_vector(std::span<const double> state) {
  return Eigen::Map<const Eigen::VectorXd>(state.data(), static_cast<Eigen::Index>(state.size()));
}

Categorical actor_forward(const PolicyParams& params, std::span<const double> state) {
  if (state.size() != static_cast<std::size_t>(params.actor.input_width()))
    throw std::invalid_argument("actor_forward: state width mismatch");
  const Eigen::MatrixXd logits = params.actor.forward(to_vector(state));
  return softmax(std::span<const double>(logits.data(), static_cast<std::size_t>(logits.size())));
}

double critic_forward(const PolicyParams& params, std::span<const double> state) {
  if (state.size() != static_cast<std::size_t>(params.critic.input_width()))
    throw std::invalid_argument("critic_forward: state width mismatch");
  const double v = params.critic.forward(to_vector(state))(0, 0);
  return params.value_norm.mean + params.value_norm.scale() * v;
}

SampledAction sample_action(const Categorical& dist, Rng& rng) {
  if (dist.probs.empty()) throw std::invalid_argument("sample_action: empty distribution");
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t pick = dist.probs.size() - 1;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    acc += dist.probs[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }
  // Guard against rounding landing on a zero-probability tail entry.
  while (dist.probs[pick] <= 0.0 && pick > 0) --pick;
  return {pick, dist.log_probs[pick]};
}

SampledAction argmax_action(const Categorical& dist) {
  if (dist.probs.empty()) throw std::invalid_argument("argmax_action: empty distribution");
  const auto it = std::max_element(dist.probs.begin(), dist.probs.end());
  const auto idx = static_cast<std::size_t>(it - dist.probs.begin());
  return {idx, dist.log_probs[idx]};
}

}  // namespace oran::agent
