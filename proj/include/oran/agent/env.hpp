#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "oran/agent/action_space.hpp"
#include "oran/agent/policy.hpp"
#include "oran/agent/reward.hpp"
#include "oran/kpm/encoder.hpp"
#include "oran/kpm/sampler.hpp"
#include "oran/sim/scenario.hpp"

namespace oran::agent {

struct EnvStep {
  State state{};
  double reward = 0.0;
  std::array<KpmSample, kNumSlices> kpms{};  // window means behind the reward
};

/// Simulator and KPM pipeline wrapped as a control-interval environment:
/// one step applies an action and runs the base station for one reporting
/// period, then returns the encoded windows and the reward computed from
/// their mean KPMs.
class ClosedLoopEnv {
 public:
  ClosedLoopEnv(sim::Scenario scenario, kpm::EncoderParams encoder, ActionSpaceKind kind,
                RewardWeights weights, std::int64_t period_ms);

  /// Fresh base station under the scenario's initial controls, run for one
  /// period to produce the first observation.
  State reset(std::uint64_t seed);
  EnvStep step(std::size_t action_index);

  const ActionSpace& action_space() const { return space_; }
  const sim::BsState& state() const { return *state_; }
  std::int64_t period_ms() const { return period_; }

 private:
  kpm::SliceWindows run_period();

  sim::Scenario scenario_;
  kpm::EncoderParams encoder_;
  ActionSpace space_;
  RewardWeights weights_;
  std::int64_t period_;
  std::optional<sim::BsState> state_;
  std::optional<kpm::PeriodicSampler> sampler_;
};

/// Window means of all three slices, indexed by SliceKind.
std::array<KpmSample, kNumSlices> window_means(const kpm::SliceWindows& windows);

State to_state(const kpm::SliceWindows& windows, const kpm::EncoderParams& encoder);

}  // namespace oran::agent
