#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oran/ric/runtime.hpp"
#include "oran/sim/scenario.hpp"

namespace oran::ric {

/// Newline-delimited, ordered, bidirectional message channel.
class Transport {
 public:
  virtual ~Transport() = default;
  /// Next line without its terminator; nullopt once the peer is gone.
  virtual std::optional<std::string> read_line() = 0;
  virtual void write_line(const std::string& line) = 0;
};

class StreamTransport : public Transport {
 public:
  StreamTransport(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<std::string> read_line() override;
  void write_line(const std::string& line) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

/// xApp side of the protocol: announces subscriptions and answers every
/// indication with a control carrying the same seq.
class WireClient {
 public:
  void add(std::unique_ptr<Xapp> xapp);

  std::vector<std::string> subscribe_lines() const;
  /// Replies to one server line (possibly none).
  std::vector<std::string> on_line(const std::string& line);

  const std::vector<AckMsg>& acks() const { return acks_; }

 private:
  std::vector<std::unique_ptr<Xapp>> xapps_;
  std::vector<AckMsg> acks_;
};

/// In-memory transport whose peer is a WireClient driven synchronously;
/// extra_lines are queued after the subscriptions (for fault injection).
class LoopbackTransport : public Transport {
 public:
  explicit LoopbackTransport(WireClient& client, std::vector<std::string> extra_lines = {});
  std::optional<std::string> read_line() override;
  void write_line(const std::string& line) override;

  /// Everything the server wrote, in order.
  const std::vector<std::string>& server_lines() const { return written_; }
  /// Queues a line as if sent by the client.
  void inject(std::string line) { queue_.push_back(std::move(line)); }

 private:
  WireClient& client_;
  std::deque<std::string> queue_;
  std::vector<std::string> written_;
};

struct SessionConfig {
  sim::Scenario scenario = sim::Scenario::standard();
  std::uint64_t seed = 1;
  std::int64_t duration_tti = 60000;
  std::size_t expected_subscriptions = 1;
  RuntimeOptions runtime;
};

struct SessionResult {
  sim::MetricLog log;
  std::vector<std::uint64_t> indications;
  std::uint64_t rejected_messages = 0;  // answered with an error ack
  LatencyStats latency;
};

/// Runs the runtime on the server side of a transport. Waits for the
/// expected subscriptions (each acked with seq 0), then runs the control
/// loop, exchanging one indication and one control per period boundary.
/// Out-of-contract messages get an error ack and the session continues; a
/// control whose seq is lower than the xApp's previous control raises
/// ProtocolViolation after an error ack, closing the session.
SessionResult serve_wire(const SessionConfig& config, Transport& transport);

}  // namespace oran::ric
