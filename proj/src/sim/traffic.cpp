#include "oran/sim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oran/errors.hpp"

namespace oran::sim {

void TrafficProfile::validate() const {
  if (!(rate_bps > 0.0) || !std::isfinite(rate_bps))
    throw InvalidProfile("rate must be positive, got " + std::to_string(rate_bps));
  if (packet_bytes == 0) throw InvalidProfile("packet size must be positive");
}

void PacketQueue::push(const Packet& p) {
  if (p.bytes == 0) return;
  packets_.push_back(p);
  bytes_ += p.bytes;
}

PacketQueue::Drain PacketQueue::serve(std::uint64_t max_bytes) {
  Drain out;
  while (max_bytes > 0 && !packets_.empty()) {
    const std::uint64_t left = packets_.front().bytes - head_served_;
    if (max_bytes >= left) {
      max_bytes -= left;
      out.bytes += left;
      ++out.packets;
      packets_.pop_front();
      head_served_ = 0;
    } else {
      head_served_ += static_cast<std::uint32_t>(max_bytes);
      out.bytes += max_bytes;
      max_bytes = 0;
    }
  }
  bytes_ -= out.bytes;
  return out;
}

TrafficSource::TrafficSource(TrafficProfile profile) : profile_(profile) { profile_.validate(); }

std::vector<Packet> TrafficSource::advance(std::uint32_t dt_ttis, Rng& rng) {
  std::vector<Packet> out;
  if (dt_ttis == 0) return out;
  const std::int64_t end = elapsed_ + dt_ttis;

  if (profile_.kind == TrafficKind::ConstantBitrate) {
    // Count from absolute time so spacing never drifts; the epsilon absorbs
    // rounding when a packet boundary lands exactly on a TTI edge.
    const double per_ms = profile_.rate_bps / (8000.0 * profile_.packet_bytes);
    const auto due = static_cast<std::uint64_t>(std::floor(per_ms * static_cast<double>(end) + 1e-9));
    const double spacing_ms = 1.0 / per_ms;
    for (; emitted_ < due; ++emitted_) {
      const auto at = static_cast<std::int64_t>(std::ceil(spacing_ms * static_cast<double>(emitted_ + 1) - 1e-9));
      out.push_back({profile_.packet_bytes, std::clamp(at, elapsed_ + 1, end)});
    }
  } else {
    const double rate = profile_.packets_per_second();
    if (next_arrival_s_ < 0.0) next_arrival_s_ = rng.exponential(rate);
    const double end_s = static_cast<double>(end) / 1000.0;
    while (next_arrival_s_ <= end_s) {
      const auto at = static_cast<std::int64_t>(std::ceil(next_arrival_s_ * 1000.0));
      out.push_back({profile_.packet_bytes, std::clamp(at, elapsed_ + 1, end)});
      next_arrival_s_ += rng.exponential(rate);
    }
  }
  elapsed_ = end;
  return out;
}

}  // namespace oran::sim
