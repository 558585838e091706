#include "oran/agent/returns.hpp"

#include <cmath>
#include <stdexcept>

namespace oran::agent {

std::vector<double> discounted_return(std::span<const double> rewards, double gamma, double tail) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must lie in [0, 1]");
  std::vector<double> out(rewards.size());
  double g = tail;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    g = rewards[t] + gamma * g;
    out[t] = g;
  }
  return out;
}

std::vector<double> gae_advantages(std::span<const double> rewards, std::span<const double> values,
                                   double next_value, double gamma, double lambda) {
  if (rewards.size() != values.size()) throw std::invalid_argument("rewards/values length mismatch");
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must lie in [0, 1]");
  std::vector<double> adv(rewards.size());
  double running = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    const double v_next = t + 1 < values.size() ? values[t + 1] : next_value;
    const double delta = rewards[t] + gamma * v_next - values[t];
    running = delta + gamma * lambda * running;
    adv[t] = running;
  }
  return adv;
}

std::vector<double> gae_advantages(const Trajectory& trajectory, double gamma, double lambda) {
  std::vector<double> r, v;
  r.reserve(trajectory.steps.size());
  v.reserve(trajectory.steps.size());
  for (const auto& s : trajectory.steps) {
    r.push_back(s.reward);
    v.push_back(s.value);
  }
  return gae_advantages(r, v, trajectory.terminal ? 0.0 : trajectory.bootstrap_value, gamma, lambda);
}

void normalize_advantages(std::vector<double>& advantages) {
  if (advantages.empty()) return;
  double mean = 0.0;
  for (double a : advantages) mean += a;
  mean /= static_cast<double>(advantages.size());
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  var /= static_cast<double>(advantages.size());
  const double sd = std::sqrt(var);
  for (double& a : advantages) a = sd > 1e-8 ? (a - mean) / sd : a - mean;
}

}  // namespace oran::agent
