#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oran/agent/policy.hpp"
#include "oran/agent/returns.hpp"
#include "oran/nn/mlp.hpp"
#include "oran/rng.hpp"

namespace oran::agent {

struct PpoConfig {
  double gamma = 0.99;
  double lambda = 0.95;
  double clip_eps = 0.2;
  int epochs = 10;
  int minibatch_size = 64;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double lr = 1e-3;

  /// Throws std::invalid_argument on an out-of-range hyperparameter.
  void validate() const;
};

/// Flattened trajectories ready for optimisation. Advantages are
/// normalised over the whole batch; returns are value targets in reward
/// units (advantage + value estimate).
struct PreparedBatch {
  Eigen::MatrixXd states;  // kStateWidth x n
  std::vector<std::size_t> actions;
  std::vector<double> old_log_probs;
  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return actions.size(); }
  PreparedBatch subset(std::span<const std::size_t> rows) const;
};

/// Throws EmptyBatch when there are no steps at all.
PreparedBatch prepare_batch(std::span<const Trajectory> trajectories, double gamma, double lambda);

/// Minimised objective:
///   -mean(min(rho*A, clip(rho, 1-eps, 1+eps)*A))
///   + value_coef * mean((v - g)^2) - entropy_coef * mean(H)
/// where v is the critic's raw output and g the return scaled by the
/// policy's value normaliser.
struct PpoLoss {
  double total = 0.0;
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;
  nn::MlpGradient actor_grad;
  nn::MlpGradient critic_grad;
};

PpoLoss ppo_loss(const PolicyParams& params, const PreparedBatch& batch, const PpoConfig& config,
                 bool with_gradient);

/// Adam state for both networks, carried across updates.
struct PpoOptimizer {
  nn::Adam actor;
  nn::Adam critic;

  explicit PpoOptimizer(const PolicyParams& params) : actor(params.actor), critic(params.critic) {}
};

struct EpochStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double total = 0.0;
};

/// Minibatch epochs over a shuffled batch. Deterministic given rng state.
std::vector<EpochStats> ppo_update(PolicyParams& params, PpoOptimizer& optimizer,
                                   const PreparedBatch& batch, const PpoConfig& config, Rng& rng);

/// Convenience form with a fresh optimiser. Throws EmptyBatch.
std::vector<EpochStats> ppo_update(PolicyParams& params, std::span<const Trajectory> trajectories,
                                   const PpoConfig& config, Rng& rng);

/// Folds new value targets into the normaliser while rescaling the
/// critic's output layer so that its predictions in reward units are unchanged.
void update_value_normalizer(PolicyParams& params, std::span<const double> returns);

}  // namespace oran::agent
