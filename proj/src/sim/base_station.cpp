#include "oran/sim/base_station.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "oran/errors.hpp"

namespace oran::sim {

void validate_partition(const PrbPartition& p) {
  if (auto why = partition_violation(p); !why.empty()) throw InvalidPartition(why);
}

void apply_control(BsState& state, const std::optional<PrbPartition>& partition,
                   const std::optional<SchedulerAssignment>& assignment) {
  if (partition) validate_partition(*partition);
  if (partition) state.pending_partition = partition;
  if (assignment) state.pending_assignment = assignment;
}

std::vector<Packet> generate_traffic(Ue& ue, std::uint32_t dt_ttis) {
  auto arrivals = ue.traffic.advance(dt_ttis, ue.traffic_rng);
  for (const auto& p : arrivals) {
    ue.buffer.push(p);
    ue.totals.arrived_bytes += p.bytes;
    ++ue.totals.arrived_packets;
  }
  return arrivals;
}

std::vector<std::size_t> ues_of_slice(const BsState& state, SliceKind slice) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < state.ues.size(); ++i)
    if (state.ues[i].slice == slice) out.push_back(i);
  return out;
}

std::vector<int> schedule_slice(SchedulerKind kind, SliceKind slice,
                                std::span<const std::size_t> ue_indices, int n_prbs,
                                BsState& state) {
  const std::size_t n = ue_indices.size();
  std::vector<int> grants(n, 0);
  if (n == 0 || n_prbs <= 0) return grants;

  // A UE stays eligible while the capacity granted this TTI is below its backlog.
  std::vector<double> per_prb(n), backlog_bits(n), granted_bits(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Ue& ue = state.ues[ue_indices[i]];
    per_prb[i] = ue.spectral_efficiency * ue.fading_state;
    backlog_bits[i] = 8.0 * static_cast<double>(ue.buffer.bytes());
  }
  auto eligible = [&](std::size_t i) { return granted_bits[i] < backlog_bits[i]; };

  std::size_t& rr = state.rr_pointers[index_of(slice)];
  for (int prb = 0; prb < n_prbs; ++prb) {
    std::size_t pick = n;
    switch (kind) {
      case SchedulerKind::RoundRobin:
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t j = (rr + k) % n;
          if (eligible(j)) {
            pick = j;
            break;
          }
        }
        if (pick < n) rr = (pick + 1) % n;
        break;
      case SchedulerKind::Waterfilling:
        for (std::size_t j = 0; j < n; ++j)
          if (eligible(j) && (pick == n || granted_bits[j] < granted_bits[pick])) pick = j;
        break;
      case SchedulerKind::ProportionalFair: {
        double best = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (!eligible(j)) continue;
          const double metric = per_prb[j] / std::max(state.pf_ewma[ue_indices[j]], 1e-9);
          if (metric > best) {
            best = metric;
            pick = j;
          }
        }
        break;
      }
    }
    if (pick == n) break;
    ++grants[pick];
    granted_bits[pick] += per_prb[pick];
  }
  return grants;
}

TtiReport serve_tti(BsState& state) {
  if (state.pending_partition) state.partition = *std::exchange(state.pending_partition, std::nullopt);
  if (state.pending_assignment)
    state.assignment = *std::exchange(state.pending_assignment, std::nullopt);
  if (state.pf_ewma.size() != state.ues.size()) state.pf_ewma.resize(state.ues.size(), 0.0);

  TtiReport report;
  report.tti = state.tti;
  report.partition = state.partition;
  report.grants.assign(state.ues.size(), 0);
  report.served_bytes.assign(state.ues.size(), 0);
  report.drained_packets.assign(state.ues.size(), 0);

  for (SliceKind slice : kAllSlices) {
    const auto idx = ues_of_slice(state, slice);
    const auto g = schedule_slice(state.assignment[slice], slice, idx, state.partition[slice], state);
    for (std::size_t k = 0; k < idx.size(); ++k) report.grants[idx[k]] = g[k];
  }

  for (std::size_t i = 0; i < state.ues.size(); ++i) {
    Ue& ue = state.ues[i];
    const int grant = report.grants[i];
    std::uint64_t served = 0;
    if (grant > 0) {
      const auto capacity = static_cast<std::uint64_t>(
          std::floor(grant * ue.spectral_efficiency * ue.fading_state / 8.0));
      const auto drain = ue.buffer.serve(capacity);
      served = drain.bytes;
      report.drained_packets[i] = drain.packets;
      ue.totals.drained_packets += drain.packets;
      ue.totals.granted_prbs += static_cast<std::uint64_t>(grant);
    }
    report.served_bytes[i] = served;
    ue.totals.served_bytes += served;
    state.pf_ewma[i] = (1.0 - kPfEwmaFactor) * state.pf_ewma[i] +
                       kPfEwmaFactor * 8.0 * static_cast<double>(served);
  }
  ++state.tti;
  return report;
}

TtiReport step(BsState& state) {
  for (Ue& ue : state.ues) {
    generate_traffic(ue, 1);
    if (state.fading.enabled) ue.fading_state = ue.fading_rng.uniform(state.fading.low, state.fading.high);
  }
  return serve_tti(state);
}

}  // namespace oran::sim
