#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oran/kpm/window.hpp"
#include "oran/types.hpp"

namespace oran::ric {

inline constexpr int kWireVersion = 1;

struct SubscribeMsg {
  std::string xapp_id;
  std::int64_t period_ms = 1000;
  std::vector<std::string> metrics{"thr", "buf", "pkt"};
  std::vector<std::string> slices{"eMBB", "mMTC", "URLLC"};
  // Parameter set the xApp will control: "slicing", "scheduling" or "both".
  std::string control = "both";
  bool operator==(const SubscribeMsg&) const = default;
};

struct IndicationMsg {
  std::string xapp_id;
  std::uint64_t seq = 0;
  std::int64_t tti = 0;
  kpm::SliceWindows windows{};
  bool operator==(const IndicationMsg&) const = default;
};

struct ControlMsg {
  std::string xapp_id;
  std::uint64_t seq = 0;
  ControlAction action;
  bool operator==(const ControlMsg&) const = default;
};

struct AckMsg {
  std::uint64_t seq = 0;
  bool ok = true;
  std::string error;  // empty when ok
  bool operator==(const AckMsg&) const = default;
};

using WireMessage = std::variant<SubscribeMsg, IndicationMsg, ControlMsg, AckMsg>;

/// One line of JSON without the trailing newline.
std::string serialize(const WireMessage& msg);
nlohmann::ordered_json to_json(const WireMessage& msg);

/// Throws FormatError with a diagnostic on malformed input, a wrong "v"
/// or an unknown "type".
WireMessage parse_message(const std::string& line);
WireMessage message_from_json(const nlohmann::json& j);

nlohmann::ordered_json windows_to_json(const kpm::SliceWindows& windows);
kpm::SliceWindows windows_from_json(const nlohmann::json& j);

}  // namespace oran::ric
