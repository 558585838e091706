#include "oran/ric/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "oran/errors.hpp"
#include "oran/kpm/sampler.hpp"

namespace oran::ric {

ControlAction resolve_controls(std::span<const PendingControl> controls) {
  ControlAction merged;
  const std::string* partition_owner = nullptr;
  const std::string* assignment_owner = nullptr;
  for (const auto& c : controls) {
    const ControlAction a = restrict_to(c.action, c.declared);
    if (a.partition) {
      if (partition_owner && *partition_owner != c.xapp_id)
        throw ConflictError("xApps " + *partition_owner + " and " + c.xapp_id + " both set the PRB partition");
      merged.partition = a.partition;
      partition_owner = &c.xapp_id;
    }
    if (a.assignment) {
      if (assignment_owner && *assignment_owner != c.xapp_id)
        throw ConflictError("xApps " + *assignment_owner + " and " + c.xapp_id + " both set the schedulers");
      merged.assignment = a.assignment;
      assignment_owner = &c.xapp_id;
    }
  }
  return merged;
}

RicRuntime::RicRuntime(RuntimeOptions options) : options_(options) {
  kpm::validate_period(options_.log_period_ms);
}

std::size_t RicRuntime::subscribe(std::shared_ptr<Xapp> xapp) {
  if (!xapp) throw std::invalid_argument("null xApp");
  const auto& d = xapp->descriptor();
  d.subscription.validate();
  for (const auto& other : xapps_) {
    const auto& od = other->descriptor();
    if (od.xapp_id == d.xapp_id) throw DuplicateXapp(d.xapp_id);
    if (overlaps(od.controlled, d.controlled))
      throw ConflictError("xApp " + d.xapp_id + " (" + std::string(to_string(d.controlled)) + ") overlaps " +
                          od.xapp_id + " (" + std::string(to_string(od.controlled)) + ")");
  }
  xapps_.push_back(std::move(xapp));
  return xapps_.size() - 1;
}

sim::MetricLog RicRuntime::run_control_loop(sim::BsState& state, std::int64_t duration_tti) {
  if (duration_tti < 0) throw std::invalid_argument("duration must be >= 0");
  const std::int64_t origin = state.tti;
  std::vector<kpm::PeriodicSampler> samplers;
  for (const auto& x : xapps_) samplers.emplace_back(x->descriptor().subscription.period_ms, state);
  indications_.assign(xapps_.size(), 0);
  latency_ = {};

  sim::MetricLog log;
  sim::CounterSnapshot log_start = sim::snapshot(state);
  std::vector<PendingControl> pending;

  for (std::int64_t t = 0; t < duration_tti; ++t) {
    sim::step(state);
    if ((state.tti - origin) % options_.log_period_ms == 0) {
      for (SliceKind s : kAllSlices) log.samples.push_back(sim::measure_kpm(state, s, log_start));
      log_start = sim::snapshot(state);
    }

    pending.clear();
    for (std::size_t i = 0; i < xapps_.size(); ++i) {
      auto windows = samplers[i].on_tti(state);
      if (!windows) continue;
      IndicationMsg ind{xapps_[i]->id(), ++indications_[i], state.tti, *windows};
      const auto t0 = std::chrono::steady_clock::now();
      ControlAction action = xapps_[i]->on_indication(ind);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      ++latency_.decisions;
      latency_.total_ms += ms;
      latency_.max_ms = std::max(latency_.max_ms, ms);
      if (ms > options_.latency_budget_ms) ++latency_.over_budget;
      pending.push_back({xapps_[i]->id(), xapps_[i]->descriptor().controlled, std::move(action)});
    }
    if (pending.empty()) continue;

    const ControlAction merged = resolve_controls(pending);
    sim::apply_control(state, merged);
    for (const auto& p : pending) {
      ControlAction applied = restrict_to(p.action, p.declared);
      if (applied.partition || applied.assignment) log.actions.push_back({state.tti, p.xapp_id, std::move(applied)});
    }
  }
  return log;
}

}  // namespace oran::ric
