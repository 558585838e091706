#include "oran/agent/env.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace oran::agent {

std::array<KpmSample, kNumSlices> window_means(const kpm::SliceWindows& windows) {
  std::array<KpmSample, kNumSlices> out{};
  for (std::size_t i = 0; i < kNumSlices; ++i) out[i] = windows[i].mean();
  return out;
}

State to_state(const kpm::SliceWindows& windows, const kpm::EncoderParams& encoder) {
  const auto encoded = kpm::encode_state(windows, encoder);
  State s{};
  std::copy(encoded.begin(), encoded.end(), s.begin());
  return s;
}

ClosedLoopEnv::ClosedLoopEnv(sim::Scenario scenario, kpm::EncoderParams encoder, ActionSpaceKind kind,
                             RewardWeights weights, std::int64_t period_ms)
    : scenario_(std::move(scenario)),
      encoder_(std::move(encoder)),
      space_(kind),
      weights_(weights),
      period_(period_ms) {
  kpm::validate_period(period_ms);
  weights_.validate();
  scenario_.validate();
}

kpm::SliceWindows ClosedLoopEnv::run_period() {
  for (;;) {
    sim::step(*state_);
    if (auto windows = sampler_->on_tti(*state_)) return *windows;
  }
}

State ClosedLoopEnv::reset(std::uint64_t seed) {
  state_ = sim::make_state(scenario_, seed);
  sampler_.emplace(period_, *state_);
  return to_state(run_period(), encoder_);
}

EnvStep ClosedLoopEnv::step(std::size_t action_index) {
  if (!state_) throw std::logic_error("ClosedLoopEnv::step before reset");
  sim::apply_control(*state_, space_.action(action_index));
  const auto windows = run_period();
  EnvStep out;
  out.kpms = window_means(windows);
  out.reward = step_reward(out.kpms, weights_);
  out.state = to_state(windows, encoder_);
  return out;
}

}  // namespace oran::agent
