#include "oran/sim/measurement.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oran/errors.hpp"
#include "oran/format.hpp"

namespace oran::sim {

CounterSnapshot snapshot(const BsState& state) {
  CounterSnapshot snap;
  snap.tti = state.tti;
  snap.totals.reserve(state.ues.size());
  for (const auto& ue : state.ues) snap.totals.push_back(ue.totals);
  return snap;
}

KpmSample measure_kpm(const BsState& state, SliceKind slice, const CounterSnapshot& window_start) {
  const std::int64_t length = state.tti - window_start.tti;
  if (length <= 0) throw std::invalid_argument("measure_kpm: empty window");
  if (window_start.totals.size() != state.ues.size())
    throw std::invalid_argument("measure_kpm: snapshot from a different cell");

  KpmSample out;
  out.slice = slice;
  out.tti = state.tti;
  double served = 0.0, drained = 0.0, buffered = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < state.ues.size(); ++i) {
    const Ue& ue = state.ues[i];
    if (ue.slice != slice) continue;
    served += static_cast<double>(ue.totals.served_bytes - window_start.totals[i].served_bytes);
    drained += static_cast<double>(ue.totals.drained_packets - window_start.totals[i].drained_packets);
    buffered += static_cast<double>(ue.buffer.bytes());
    ++n;
  }
  if (n == 0) return out;
  const double seconds = static_cast<double>(length) / 1000.0;
  out.dl_throughput_mbps = (served / n) * 8.0 / seconds / 1e6;
  out.buffer_bytes = buffered / n;
  out.tx_packets = drained / n;
  return out;
}

std::vector<double> MetricLog::values(SliceKind slice, double KpmSample::*metric) const {
  std::vector<double> out;
  for (const auto& s : samples)
    if (s.slice == slice) out.push_back(s.*metric);
  return out;
}

void write_metric_csv(std::ostream& out, const MetricLog& log) {
  out << kMetricCsvHeader << '\n';
  for (const auto& s : log.samples) {
    out << s.tti << ',' << to_string(s.slice) << ',' << format_double(s.dl_throughput_mbps) << ','
        << format_double(s.buffer_bytes) << ',' << format_double(s.tx_packets) << '\n';
  }
}

void write_action_csv(std::ostream& out, const MetricLog& log) {
  out << kActionCsvHeader << '\n';
  for (const auto& a : log.actions) {
    out << a.tti << ',' << a.xapp_id << ',';
    if (a.action.partition) {
      const auto& p = a.action.partition->prbs_per_slice;
      out << p[0] << ' ' << p[1] << ' ' << p[2];
    }
    out << ',';
    if (a.action.assignment) {
      const auto& k = a.action.assignment->scheduler_per_slice;
      out << to_string(k[0]) << ' ' << to_string(k[1]) << ' ' << to_string(k[2]);
    }
    out << '\n';
  }
}

std::string metric_csv(const MetricLog& log) {
  std::ostringstream os;
  write_metric_csv(os, log);
  return os.str();
}

MetricLog read_metric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  MetricLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) continue;  // header
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 5) throw ParseError(lineno, "expected 5 columns");
    KpmSample s;
    const auto tti = parse_double(cells[0]);
    const auto thr = parse_double(cells[2]);
    const auto buf = parse_double(cells[3]);
    const auto pkt = parse_double(cells[4]);
    if (!tti || !thr || !buf || !pkt) throw ParseError(lineno, "non-numeric field");
    try {
      s.slice = slice_from_string(cells[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    s.tti = static_cast<std::int64_t>(*tti);
    s.dl_throughput_mbps = *thr;
    s.buffer_bytes = *buf;
    s.tx_packets = *pkt;
    log.samples.push_back(s);
  }
  return log;
}

}  // namespace oran::sim
