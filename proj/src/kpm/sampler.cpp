#include "oran/kpm/sampler.hpp"

#include <string>

#include "oran/errors.hpp"

namespace oran::kpm {

void validate_period(std::int64_t period_ms) {
  if (period_ms <= 0 || period_ms % kWindowRows != 0)
    throw InvalidPeriod("period " + std::to_string(period_ms) + " ms must be a positive multiple of 10");
}

PeriodicSampler::PeriodicSampler(std::int64_t period_ms, const sim::BsState& state)
    : period_(period_ms),
      origin_(state.tti),
      window_start_(sim::snapshot(state)),
      streams_{KpmStream(SliceKind::Embb), KpmStream(SliceKind::Mmtc), KpmStream(SliceKind::Urllc)} {
  validate_period(period_ms);
}

std::optional<SliceWindows> PeriodicSampler::on_tti(const sim::BsState& state) {
  const std::int64_t elapsed = state.tti - origin_;
  if (elapsed <= 0 || elapsed % sample_interval() != 0) return std::nullopt;

  for (SliceKind s : kAllSlices) {
    if (auto w = streams_[index_of(s)].push_sample(sim::measure_kpm(state, s, window_start_)))
      ready_[index_of(s)] = std::move(w);
  }
  window_start_ = sim::snapshot(state);

  if (!ready_[0] || !ready_[1] || !ready_[2]) return std::nullopt;
  SliceWindows out{*ready_[0], *ready_[1], *ready_[2]};
  for (auto& r : ready_) r.reset();
  return out;
}

PrbPartition random_partition(Rng& rng) {
  // Compositions of 10 five-PRB units into three parts >= 1.
  std::vector<PrbPartition> all;
  for (int e = 1; e <= 8; ++e)
    for (int m = 1; e + m <= 9; ++m) all.push_back({{e * 5, m * 5, (10 - e - m) * 5}});
  return all[rng.below(all.size())];
}

SchedulerAssignment random_assignment(Rng& rng) {
  SchedulerAssignment a;
  for (auto& k : a.scheduler_per_slice) k = static_cast<SchedulerKind>(rng.below(3));
  return a;
}

std::vector<KpmWindow> collect_windows(const sim::Scenario& scenario,
                                       std::span<const std::int64_t> periods_ms,
                                       std::int64_t duration_ms, std::uint64_t seed) {
  std::vector<KpmWindow> out;
  for (std::size_t run = 0; run < periods_ms.size(); ++run) {
    const std::uint64_t run_seed = Rng::mix(seed, run);
    sim::BsState state = sim::make_state(scenario, run_seed);
    Rng controls = Rng::derive(run_seed, 0xC0);
    PeriodicSampler sampler(periods_ms[run], state);
    for (std::int64_t t = 0; t < duration_ms; ++t) {
      sim::step(state);
      if (auto windows = sampler.on_tti(state)) {
        out.insert(out.end(), windows->begin(), windows->end());
        sim::apply_control(state, random_partition(controls), random_assignment(controls));
      }
    }
  }
  return out;
}

}  // namespace oran::kpm
