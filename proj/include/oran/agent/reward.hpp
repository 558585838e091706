#pragma once

#include <array>

#include <json.hpp>

#include "oran/types.hpp"

namespace oran::agent {

/// Per-slice reward weights. The URLLC weight is stored as a non-negative
/// magnitude and always enters the reward with a minus sign.
struct RewardWeights {
  double embb = 0.0;
  double mmtc = 0.0;
  double urllc = 0.0;

  /// Table values used by the benchmark's "Default" configuration.
  static RewardWeights standard() { return {72.0440333, 0.229357798, 0.00005}; }
  /// "Alternative": mMTC weight raised to 456/304 = 1.5.
  static RewardWeights alternative() { return {72.0440333, 1.5, 0.00005}; }

  /// Throws std::invalid_argument on a negative or non-finite weight.
  void validate() const;
  bool operator==(const RewardWeights&) const = default;
};

/// w = alpha/A, beta/B, gamma_u/C. Throws NonPositiveReference unless A, B, C > 0.
RewardWeights compute_weights(double alpha, double beta, double gamma_u, double a_ref, double b_ref,
                              double c_ref);

/// w_eMBB * throughput(eMBB) + w_mMTC * tx_packets(mMTC) - w_URLLC * buffer(URLLC),
/// each KPM being the slice average. kpms is indexed by SliceKind.
double step_reward(const std::array<KpmSample, kNumSlices>& kpms, const RewardWeights& weights);

nlohmann::json to_json(const RewardWeights& w);
RewardWeights weights_from_json(const nlohmann::json& j);

}  // namespace oran::agent
