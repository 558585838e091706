#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "oran/ric/xapp.hpp"
#include "oran/sim/measurement.hpp"

namespace oran::ric {

struct RuntimeOptions {
  std::int64_t log_period_ms = 100;  // KPM logging cadence, independent of subscriptions
  double latency_budget_ms = 10.0;
};

struct PendingControl {
  std::string xapp_id;
  ControlledParameter declared = ControlledParameter::Both;
  ControlAction action;
};

/// Merges the controls raised in one TTI. Each action is first cut down to
/// its xApp's declared parameter set; two xApps setting the same parameter
/// raise ConflictError.
ControlAction resolve_controls(std::span<const PendingControl> controls);

struct LatencyStats {
  std::uint64_t decisions = 0;
  std::uint64_t over_budget = 0;
  double max_ms = 0.0;
  double total_ms = 0.0;
};

/// Hosts xApps and drives the base station in lockstep with them.
class RicRuntime {
 public:
  explicit RicRuntime(RuntimeOptions options = {});

  /// Throws DuplicateXapp, InvalidPeriod, InvalidConfig, or ConflictError
  /// when the new xApp's parameter set overlaps a registered one.
  std::size_t subscribe(std::shared_ptr<Xapp> xapp);

  /// Advances the simulator TTI by TTI. KPMs are logged every
  /// log_period_ms; each subscription receives an indication at every
  /// period boundary and its control is applied from the next TTI on.
  sim::MetricLog run_control_loop(sim::BsState& state, std::int64_t duration_tti);

  std::size_t xapp_count() const { return xapps_.size(); }
  const Xapp& xapp(std::size_t i) const { return *xapps_.at(i); }
  /// Indications delivered per xApp in the last run, in subscription order.
  const std::vector<std::uint64_t>& indication_counts() const { return indications_; }
  const LatencyStats& latency() const { return latency_; }
  const RuntimeOptions& options() const { return options_; }

 private:
  RuntimeOptions options_;
  std::vector<std::shared_ptr<Xapp>> xapps_;
  std::vector<std::uint64_t> indications_;
  LatencyStats latency_;
};

}  // namespace oran::ric
