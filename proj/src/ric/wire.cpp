#include "oran/ric/wire.hpp"

#include <cmath>
#include <string>

#include "oran/errors.hpp"

namespace oran::ric {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::uint64_t seq_field(const json& j) {
  const json& v = field(j, "seq");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw FormatError("field \"seq\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw FormatError(std::string(what) + " must be finite");
  return d;
}

std::vector<std::string> string_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw FormatError(std::string("field \"") + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw FormatError(std::string("field \"") + key + "\" must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

ordered_json windows_to_json(const kpm::SliceWindows& windows) {
  ordered_json out = ordered_json::object();
  for (SliceKind s : kAllSlices) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : windows[index_of(s)].rows)
      rows.push_back(ordered_json::array({r.tti, r.dl_throughput_mbps, r.buffer_bytes, r.tx_packets}));
    out[std::string(to_string(s))] = std::move(rows);
  }
  return out;
}

kpm::SliceWindows windows_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("\"windows\" must be an object");
  kpm::SliceWindows out{};
  for (SliceKind s : kAllSlices) {
    const std::string name(to_string(s));
    const json& rows = field(j, name.c_str());
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(kpm::kWindowRows))
      throw FormatError("window \"" + name + "\" must hold 10 rows");
    auto& w = out[index_of(s)];
    w.slice = s;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const json& row = rows[r];
      if (!row.is_array() || row.size() != 4) throw FormatError("window rows must be [tti, thr, buf, pkt]");
      if (!row[0].is_number_integer()) throw FormatError("window row tti must be an integer");
      KpmSample& k = w.rows[r];
      k.slice = s;
      k.tti = row[0].get<std::int64_t>();
      k.dl_throughput_mbps = number(row[1], "throughput");
      k.buffer_bytes = number(row[2], "buffer");
      k.tx_packets = number(row[3], "tx packets");
    }
  }
  return out;
}

ordered_json to_json(const WireMessage& msg) {
  return std::visit(
      Overload{
          [](const SubscribeMsg& m) {
            return ordered_json{{"v", kWireVersion}, {"type", "subscribe"}, {"xapp_id", m.xapp_id},
                        {"period_ms", m.period_ms},  {"metrics", m.metrics},  {"slices", m.slices},
                        {"control", m.control}};
          },
          [](const IndicationMsg& m) {
            return ordered_json{{"v", kWireVersion}, {"type", "indication"}, {"xapp_id", m.xapp_id},
                        {"seq", m.seq},      {"tti", m.tti},         {"windows", windows_to_json(m.windows)}};
          },
          [](const ControlMsg& m) {
            ordered_json j{{"v", kWireVersion}, {"type", "control"}, {"xapp_id", m.xapp_id}, {"seq", m.seq}};
            if (m.action.partition) j["partition"] = m.action.partition->prbs_per_slice;
            if (m.action.assignment) {
              ordered_json s = ordered_json::array();
              for (auto k : m.action.assignment->scheduler_per_slice) s.push_back(std::string(to_string(k)));
              j["schedulers"] = std::move(s);
            }
            return j;
          },
          [](const AckMsg& m) {
            ordered_json j{{"v", kWireVersion}, {"type", "ack"}, {"seq", m.seq}, {"ok", m.ok}};
            if (!m.ok) j["error"] = m.error;
            return j;
          },
      },
      msg);
}

std::string serialize(const WireMessage& msg) { return to_json(msg).dump(); }

WireMessage message_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("message must be a JSON object");
  const json& v = field(j, "v");
  if (!v.is_number_integer() || v.get<int>() != kWireVersion)
    throw FormatError("unsupported protocol version " + v.dump());
  const std::string type = string_field(j, "type");

  if (type == "subscribe") {
    SubscribeMsg m;
    m.xapp_id = string_field(j, "xapp_id");
    m.period_ms = int_field(j, "period_ms");
    m.metrics = string_list(j, "metrics");
    m.slices = string_list(j, "slices");
    if (j.contains("control")) m.control = string_field(j, "control");
    return m;
  }
  if (type == "indication") {
    IndicationMsg m;
    m.xapp_id = string_field(j, "xapp_id");
    m.seq = seq_field(j);
    m.tti = int_field(j, "tti");
    m.windows = windows_from_json(field(j, "windows"));
    return m;
  }
  if (type == "control") {
    ControlMsg m;
    m.xapp_id = string_field(j, "xapp_id");
    m.seq = seq_field(j);
    if (auto it = j.find("partition"); it != j.end()) {
      if (!it->is_array() || it->size() != kNumSlices) throw FormatError("\"partition\" must hold 3 integers");
      PrbPartition p;
      for (std::size_t i = 0; i < kNumSlices; ++i) {
        if (!(*it)[i].is_number_integer()) throw FormatError("\"partition\" must hold 3 integers");
        p.prbs_per_slice[i] = (*it)[i].get<int>();
      }
      m.action.partition = p;
    }
    if (auto it = j.find("schedulers"); it != j.end()) {
      if (!it->is_array() || it->size() != kNumSlices) throw FormatError("\"schedulers\" must hold 3 names");
      SchedulerAssignment a;
      for (std::size_t i = 0; i < kNumSlices; ++i) {
        if (!(*it)[i].is_string()) throw FormatError("\"schedulers\" must hold 3 names");
        try {
          a.scheduler_per_slice[i] = scheduler_from_string((*it)[i].get<std::string>());
        } catch (const std::exception& e) {
          throw FormatError(e.what());
        }
      }
      m.action.assignment = a;
    }
    return m;
  }
  if (type == "ack") {
    AckMsg m;
    m.seq = seq_field(j);
    const json& ok = field(j, "ok");
    if (!ok.is_boolean()) throw FormatError("field \"ok\" must be a boolean");
    m.ok = ok.get<bool>();
    if (!m.ok) m.error = j.contains("error") ? string_field(j, "error") : std::string();
    return m;
  }
  throw FormatError("unknown message type \"" + type + "\"");
}

WireMessage parse_message(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return message_from_json(j);
}

}  // namespace oran::ric
