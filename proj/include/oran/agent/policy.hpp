#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "oran/nn/mlp.hpp"
#include "oran/rng.hpp"

namespace oran::agent {

inline constexpr int kStateWidth = 9;  // three concatenated per-slice encodings
inline constexpr int kHiddenWidth = 30;
inline constexpr int kHiddenLayers = 3;

using State = std::array<double, kStateWidth>;

/// Running statistics of value targets; the critic network predicts
/// returns in these normalised units.
struct ValueNormalizer {
  double mean = 0.0;
  double m2 = 0.0;
  double count = 0.0;

  double scale() const;
  void update(std::span<const double> returns);
  bool operator==(const ValueNormalizer&) const = default;
};

/// Actor and critic: 9 -> 30 -> 30 -> 30 -> {|catalog|, 1}, tanh hidden units.
struct PolicyParams {
  nn::Mlp actor;
  nn::Mlp critic;
  ValueNormalizer value_norm;

  static PolicyParams initial(std::size_t n_actions, Rng& rng);
  std::size_t action_count() const { return static_cast<std::size_t>(actor.output_width()); }
  bool all_finite() const { return actor.all_finite() && critic.all_finite(); }
  bool operator==(const PolicyParams&) const = default;
};

struct Categorical {
  std::vector<double> probs;
  std::vector<double> log_probs;

  std::size_t size() const { return probs.size(); }
  double entropy() const;
};

/// Numerically stable softmax.
Categorical softmax(std::span<const double> logits);

Categorical actor_forward(const PolicyParams& params, std::span<const double> state);
/// State value in reward units.
double critic_forward(const PolicyParams& params, std::span<const double> state);

struct SampledAction {
  std::size_t index = 0;
  double log_prob = 0.0;
};

SampledAction sample_action(const Categorical& dist, Rng& rng);
/// Most probable index, lowest index on ties. Never touches an RNG.
SampledAction argmax_action(const Categorical& dist);

Eigen::VectorXd to_vector(std::span<const double> state);

}  // namespace oran::agent
