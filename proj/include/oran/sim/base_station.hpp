#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oran/rng.hpp"
#include "oran/sim/traffic.hpp"
#include "oran/types.hpp"

namespace oran::sim {

inline constexpr double kDefaultSpectralEfficiency = 350.0;  // bits per PRB per TTI
inline constexpr double kPfEwmaFactor = 1.0 / 100.0;

/// Running totals since reset; KPM windows are differences of two snapshots.
struct UeCounters {
  std::uint64_t arrived_bytes = 0;
  std::uint64_t arrived_packets = 0;
  std::uint64_t served_bytes = 0;
  std::uint64_t drained_packets = 0;
  std::uint64_t granted_prbs = 0;
  bool operator==(const UeCounters&) const = default;
};

struct Ue {
  int id = 0;
  SliceKind slice = SliceKind::Embb;
  TrafficSource traffic;
  PacketQueue buffer;
  double spectral_efficiency = kDefaultSpectralEfficiency;
  double fading_state = 1.0;
  Rng traffic_rng;
  Rng fading_rng;
  UeCounters totals;

  bool operator==(const Ue&) const = default;
};

struct FadingConfig {
  bool enabled = false;
  double low = 0.6;
  double high = 1.4;
  bool operator==(const FadingConfig&) const = default;
};

struct BsState {
  std::int64_t tti = 0;
  PrbPartition partition;
  SchedulerAssignment assignment;
  // Staged by apply_control, committed at the next TTI boundary.
  std::optional<PrbPartition> pending_partition;
  std::optional<SchedulerAssignment> pending_assignment;
  std::vector<Ue> ues;
  std::array<std::size_t, kNumSlices> rr_pointers{};
  std::vector<double> pf_ewma;  // served bits per TTI, per UE
  FadingConfig fading;

  bool operator==(const BsState&) const = default;
};

struct TtiReport {
  std::int64_t tti = 0;  // the TTI that was served
  PrbPartition partition;
  std::vector<int> grants;
  std::vector<std::uint64_t> served_bytes;
  std::vector<std::uint32_t> drained_packets;
};

/// Throws InvalidPartition when p is not a legal 50-PRB split.
void validate_partition(const PrbPartition& p);

/// Stages new control parameters; the omitted one is left untouched.
void apply_control(BsState& state, const std::optional<PrbPartition>& partition,
                   const std::optional<SchedulerAssignment>& assignment);
inline void apply_control(BsState& state, const ControlAction& action) {
  apply_control(state, action.partition, action.assignment);
}

/// Appends the UE's arrivals over the next dt TTIs to its buffer and returns them.
std::vector<Packet> generate_traffic(Ue& ue, std::uint32_t dt_ttis);

/// PRB grants for one slice. ue_indices index into state.ues; grants are
/// returned in the same order. May advance the slice's round-robin pointer.
std::vector<int> schedule_slice(SchedulerKind kind, SliceKind slice,
                                std::span<const std::size_t> ue_indices, int n_prbs,
                                BsState& state);

/// Commits staged controls, schedules every slice and drains buffers.
/// Does not generate traffic; see step().
TtiReport serve_tti(BsState& state);

/// One full TTI: arrivals, fading draw, then serve_tti.
TtiReport step(BsState& state);

std::vector<std::size_t> ues_of_slice(const BsState& state, SliceKind slice);

}  // namespace oran::sim
