#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "oran/sim/base_station.hpp"

namespace oran::sim {

/// Cumulative UE counters captured at a TTI boundary.
struct CounterSnapshot {
  std::int64_t tti = 0;
  std::vector<UeCounters> totals;
};

CounterSnapshot snapshot(const BsState& state);

/// Slice KPMs over [window_start.tti, state.tti): mean per-UE throughput and
/// drained packets over the window, mean per-UE buffer at the window end.
/// Throws std::invalid_argument on an empty window.
KpmSample measure_kpm(const BsState& state, SliceKind slice, const CounterSnapshot& window_start);

struct ActionRecord {
  std::int64_t tti = 0;  // TTI at which the action takes effect
  std::string xapp_id;
  ControlAction action;
  bool operator==(const ActionRecord&) const = default;
};

/// Append-only record of a run: KPM samples in time order plus every applied control.
struct MetricLog {
  std::vector<KpmSample> samples;
  std::vector<ActionRecord> actions;

  std::vector<double> values(SliceKind slice, double KpmSample::*metric) const;
  bool operator==(const MetricLog&) const = default;
};

inline constexpr const char* kMetricCsvHeader = "tti,slice,dl_throughput_mbps,buffer_bytes,tx_packets";
inline constexpr const char* kActionCsvHeader = "tti,xapp_id,partition,schedulers";

void write_metric_csv(std::ostream& out, const MetricLog& log);
void write_action_csv(std::ostream& out, const MetricLog& log);
std::string metric_csv(const MetricLog& log);

/// Reads samples back from the metrics CSV (actions are not restored).
MetricLog read_metric_csv(const std::filesystem::path& path);

}  // namespace oran::sim
