#include "oran/ric/session.hpp"

#include <istream>
#include <ostream>
#include <variant>

#include "oran/errors.hpp"

namespace oran::ric {

std::optional<std::string> StreamTransport::read_line() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void StreamTransport::write_line(const std::string& line) {
  out_ << line << '\n';
  out_.flush();
}

void WireClient::add(std::unique_ptr<Xapp> xapp) { xapps_.push_back(std::move(xapp)); }

std::vector<std::string> WireClient::subscribe_lines() const {
  std::vector<std::string> out;
  for (const auto& x : xapps_) {
    const auto& d = x->descriptor();
    SubscribeMsg m{d.xapp_id, d.subscription.period_ms, d.subscription.metrics, d.subscription.slices,
                   std::string(to_string(d.controlled))};
    out.push_back(serialize(m));
  }
  return out;
}

std::vector<std::string> WireClient::on_line(const std::string& line) {
  const WireMessage msg = parse_message(line);
  if (const auto* ack = std::get_if<AckMsg>(&msg)) {
    acks_.push_back(*ack);
    return {};
  }
  const auto* ind = std::get_if<IndicationMsg>(&msg);
  if (!ind) throw ProtocolViolation("client received an unexpected message: " + line);
  for (const auto& x : xapps_)
    if (x->id() == ind->xapp_id) return {serialize(ControlMsg{ind->xapp_id, ind->seq, x->on_indication(*ind)})};
  throw ProtocolViolation("indication for unknown xApp " + ind->xapp_id);
}

LoopbackTransport::LoopbackTransport(WireClient& client, std::vector<std::string> extra_lines)
    : client_(client) {
  for (auto& l : client_.subscribe_lines()) queue_.push_back(std::move(l));
  for (auto& l : extra_lines) queue_.push_back(std::move(l));
}

std::optional<std::string> LoopbackTransport::read_line() {
  if (queue_.empty()) return std::nullopt;
  std::string line = std::move(queue_.front());
  queue_.pop_front();
  return line;
}

void LoopbackTransport::write_line(const std::string& line) {
  written_.push_back(line);
  for (auto& reply : client_.on_line(line)) queue_.push_back(std::move(reply));
}

namespace {

struct RemoteState {
  std::uint64_t last_control_seq = 0;
  bool any_control = false;
};

class ServerSession;

/// Runtime-side stand-in for an xApp that lives across the transport.
class RemoteXapp : public Xapp {
 public:
  RemoteXapp(XappDescriptor d, ServerSession& session) : descriptor_(std::move(d)), session_(session) {}
  const XappDescriptor& descriptor() const override { return descriptor_; }
  ControlAction on_indication(const IndicationMsg& indication) override;

 private:
  XappDescriptor descriptor_;
  ServerSession& session_;
};

class ServerSession {
 public:
  ServerSession(Transport& t, SessionResult& r) : transport_(t), result_(r) {}

  void reject(std::uint64_t seq, const std::string& why) {
    ++result_.rejected_messages;
    transport_.write_line(serialize(AckMsg{seq, false, why}));
  }

  void accept(std::uint64_t seq) { transport_.write_line(serialize(AckMsg{seq, true, {}})); }

  std::string next_line(const char* waiting_for) {
    auto line = transport_.read_line();
    if (!line) throw ProtocolViolation(std::string("transport closed while waiting for ") + waiting_for);
    return *line;
  }

  void subscriptions(RicRuntime& runtime, std::size_t expected) {
    while (runtime.xapp_count() < expected) {
      const std::string line = next_line("subscriptions");
      WireMessage msg;
      try {
        msg = parse_message(line);
      } catch (const FormatError& e) {
        reject(0, e.what());
        continue;
      }
      const auto* sub = std::get_if<SubscribeMsg>(&msg);
      if (!sub) {
        reject(0, "expected a subscribe message");
        continue;
      }
      try {
        XappDescriptor d;
        d.xapp_id = sub->xapp_id;
        d.controlled = controlled_from_string(sub->control);
        d.subscription = {sub->xapp_id, sub->period_ms, sub->metrics, sub->slices};
        runtime.subscribe(std::make_shared<RemoteXapp>(std::move(d), *this));
        remote_[sub->xapp_id] = {};
        accept(0);
      } catch (const std::exception& e) {
        reject(0, e.what());
      }
    }
  }

  ControlAction exchange(const XappDescriptor& d, const IndicationMsg& ind) {
    transport_.write_line(serialize(ind));
    RemoteState& rs = remote_.at(d.xapp_id);
    for (;;) {
      const std::string line = next_line("a control");
      WireMessage msg;
      try {
        msg = parse_message(line);
      } catch (const FormatError& e) {
        reject(0, e.what());
        continue;
      }
      const auto* ctl = std::get_if<ControlMsg>(&msg);
      if (!ctl) {
        reject(0, "expected a control message");
        continue;
      }
      auto it = remote_.find(ctl->xapp_id);
      if (it == remote_.end()) {
        reject(ctl->seq, "unknown xApp " + ctl->xapp_id);
        continue;
      }
      RemoteState& sender = it->second;
      if (sender.any_control && ctl->seq < sender.last_control_seq) {
        reject(ctl->seq, "seq regression for " + ctl->xapp_id);
        throw ProtocolViolation("control seq " + std::to_string(ctl->seq) + " from " + ctl->xapp_id +
                                " after seq " + std::to_string(sender.last_control_seq));
      }
      sender.any_control = true;
      sender.last_control_seq = ctl->seq;
      if (&sender != &rs || ctl->seq != ind.seq) {
        reject(ctl->seq, "stale or unexpected control; awaiting " + d.xapp_id + " seq " + std::to_string(ind.seq));
        continue;
      }
      const ControlAction action = restrict_to(ctl->action, d.controlled);
      if (action.partition) {
        const std::string why = partition_violation(*action.partition);
        if (!why.empty()) {
          reject(ctl->seq, "invalid partition: " + why);
          continue;
        }
      }
      accept(ctl->seq);
      return action;
    }
  }

 private:
  Transport& transport_;
  SessionResult& result_;
  std::map<std::string, RemoteState> remote_;
};

ControlAction RemoteXapp::on_indication(const IndicationMsg& indication) {
  return session_.exchange(descriptor_, indication);
}

}  // namespace

SessionResult serve_wire(const SessionConfig& config, Transport& transport) {
  SessionResult result;
  ServerSession session(transport, result);
  RicRuntime runtime(config.runtime);
  session.subscriptions(runtime, config.expected_subscriptions);
  sim::BsState state = sim::make_state(config.scenario, config.seed);
  result.log = runtime.run_control_loop(state, config.duration_tti);
  result.indications = runtime.indication_counts();
  result.latency = runtime.latency();
  return result;
}

}  // namespace oran::ric
