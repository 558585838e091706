#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oran/kpm/window.hpp"
#include "oran/sim/measurement.hpp"
#include "oran/sim/scenario.hpp"

namespace oran::kpm {

/// Throws InvalidPeriod unless period_ms is positive and a multiple of 10.
void validate_period(std::int64_t period_ms);

/// Samples every slice at period/10 spacing and emits the three windows
/// once per period. Call on_tti() after every simulated TTI.
class PeriodicSampler {
 public:
  PeriodicSampler(std::int64_t period_ms, const sim::BsState& state);

  std::optional<SliceWindows> on_tti(const sim::BsState& state);

  std::int64_t period_ms() const { return period_; }
  std::int64_t sample_interval() const { return period_ / kWindowRows; }

 private:
  std::int64_t period_;
  std::int64_t origin_;
  sim::CounterSnapshot window_start_;
  std::array<KpmStream, kNumSlices> streams_;
  std::array<std::optional<KpmWindow>, kNumSlices> ready_;
};

/// Uniformly random legal partition (one of the 36 five-PRB compositions).
PrbPartition random_partition(Rng& rng);
SchedulerAssignment random_assignment(Rng& rng);

/// Windows from open-loop runs under random controls redrawn every period,
/// one run per period length. Used to fit the encoder.
std::vector<KpmWindow> collect_windows(const sim::Scenario& scenario,
                                       std::span<const std::int64_t> periods_ms,
                                       std::int64_t duration_ms, std::uint64_t seed);

}  // namespace oran::kpm
