#include "oran/agent/reward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oran/errors.hpp"

namespace oran::agent {

void RewardWeights::validate() const {
  for (double w : {embb, mmtc, urllc})
    if (!std::isfinite(w) || w < 0.0)
      throw std::invalid_argument("reward weights must be finite and non-negative");
}

RewardWeights compute_weights(double alpha, double beta, double gamma_u, double a_ref, double b_ref,
                              double c_ref) {
  if (!(a_ref > 0.0) || !(b_ref > 0.0) || !(c_ref > 0.0))
    throw NonPositiveReference("reference values A, B, C must be positive");
  return {alpha / a_ref, beta / b_ref, gamma_u / c_ref};
}

double step_reward(const std::array<KpmSample, kNumSlices>& kpms, const RewardWeights& weights) {
  return weights.embb * kpms[index_of(SliceKind::Embb)].dl_throughput_mbps +
         weights.mmtc * kpms[index_of(SliceKind::Mmtc)].tx_packets -
         weights.urllc * kpms[index_of(SliceKind::Urllc)].buffer_bytes;
}

nlohmann::json to_json(const RewardWeights& w) {
  return {{"embb", w.embb}, {"mmtc", w.mmtc}, {"urllc", w.urllc}};
}

RewardWeights weights_from_json(const nlohmann::json& j) {
  RewardWeights w{j.at("embb").get<double>(), j.at("mmtc").get<double>(), j.at("urllc").get<double>()};
  w.validate();
  return w;
}

}  // namespace oran::agent
