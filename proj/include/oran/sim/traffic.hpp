#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "oran/rng.hpp"

namespace oran::sim {

enum class TrafficKind : std::uint8_t { ConstantBitrate, Poisson };

struct TrafficProfile {
  TrafficKind kind = TrafficKind::ConstantBitrate;
  double rate_bps = 0.0;
  std::uint32_t packet_bytes = 0;

  /// Throws InvalidProfile when rate or packet size is not positive.
  void validate() const;
  /// Mean packet arrivals per second.
  double packets_per_second() const { return rate_bps / (8.0 * packet_bytes); }
};

struct Packet {
  std::uint32_t bytes = 0;
  std::int64_t arrival_tti = 0;
  bool operator==(const Packet&) const = default;
};

/// FIFO byte queue. A packet leaves only once its last byte is served.
class PacketQueue {
 public:
  struct Drain {
    std::uint64_t bytes = 0;
    std::uint32_t packets = 0;
  };

  void push(const Packet& p);
  /// Serves up to max_bytes from the head; partial service stays on the head packet.
  Drain serve(std::uint64_t max_bytes);

  std::uint64_t bytes() const { return bytes_; }
  std::size_t packet_count() const { return packets_.size(); }
  bool empty() const { return bytes_ == 0; }

  bool operator==(const PacketQueue&) const = default;

 private:
  std::deque<Packet> packets_;
  std::uint64_t bytes_ = 0;
  std::uint32_t head_served_ = 0;
};

/// Arrival process for one UE. Time advances in whole TTIs (1 ms).
class TrafficSource {
 public:
  TrafficSource() = default;
  explicit TrafficSource(TrafficProfile profile);

  /// Arrivals in (now, now + dt]; dt == 0 yields nothing.
  std::vector<Packet> advance(std::uint32_t dt_ttis, Rng& rng);

  const TrafficProfile& profile() const { return profile_; }
  std::int64_t elapsed_ttis() const { return elapsed_; }

  bool operator==(const TrafficSource&) const = default;

 private:
  TrafficProfile profile_{};
  std::int64_t elapsed_ = 0;
  std::uint64_t emitted_ = 0;     // CBR: packets emitted so far
  double next_arrival_s_ = -1.0;  // Poisson: absolute time of the next arrival
};

}  // namespace oran::sim
