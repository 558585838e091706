#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace oran {

inline constexpr int kNumSlices = 3;
inline constexpr int kTotalPrbs = 50;
inline constexpr int kPrbGranularity = 5;
inline constexpr int kMinSlicePrbs = 5;

enum class SliceKind : std::uint8_t { Embb = 0, Mmtc = 1, Urllc = 2 };

inline constexpr std::array<SliceKind, kNumSlices> kAllSlices{SliceKind::Embb, SliceKind::Mmtc,
                                                              SliceKind::Urllc};

constexpr std::size_t index_of(SliceKind s) { return static_cast<std::size_t>(s); }

std::string_view to_string(SliceKind s);
/// Accepts "eMBB"/"mMTC"/"URLLC" (case-insensitive). Throws std::invalid_argument.
SliceKind slice_from_string(std::string_view name);

enum class SchedulerKind : std::uint8_t { RoundRobin = 0, Waterfilling = 1, ProportionalFair = 2 };

std::string_view to_string(SchedulerKind k);
SchedulerKind scheduler_from_string(std::string_view name);

/// PRBs assigned to each slice, indexed by SliceKind.
struct PrbPartition {
  std::array<int, kNumSlices> prbs_per_slice{20, 15, 15};

  int operator[](SliceKind s) const { return prbs_per_slice[index_of(s)]; }
  bool operator==(const PrbPartition&) const = default;
};

/// Empty string when valid, otherwise the reason.
std::string partition_violation(const PrbPartition& p);

struct SchedulerAssignment {
  std::array<SchedulerKind, kNumSlices> scheduler_per_slice{
      SchedulerKind::RoundRobin, SchedulerKind::RoundRobin, SchedulerKind::RoundRobin};

  SchedulerKind operator[](SliceKind s) const { return scheduler_per_slice[index_of(s)]; }
  bool operator==(const SchedulerAssignment&) const = default;
};

/// Per-slice telemetry averaged over the slice's UEs for one measurement window.
struct KpmSample {
  SliceKind slice = SliceKind::Embb;
  std::int64_t tti = 0;  // window end
  double dl_throughput_mbps = 0.0;
  double buffer_bytes = 0.0;
  double tx_packets = 0.0;

  bool operator==(const KpmSample&) const = default;
};

/// A control decision; either half may be absent.
struct ControlAction {
  std::optional<PrbPartition> partition;
  std::optional<SchedulerAssignment> assignment;

  bool operator==(const ControlAction&) const = default;
};

}  // namespace oran
