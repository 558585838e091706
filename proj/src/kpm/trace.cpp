#include "oran/kpm/trace.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "oran/errors.hpp"
#include "oran/format.hpp"

namespace oran::kpm {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<KpmWindow> ingest_trace(std::istream& in) {
  std::vector<KpmWindow> out;
  std::string line;
  std::size_t lineno = 0;

  // Skip leading blank lines; an empty file is an empty trace.
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  if (line.find_first_not_of(" \t\r") == std::string::npos) return out;

  static constexpr std::array<const char*, 5> kColumns{"tti", "slice", "dl_throughput_mbps",
                                                       "buffer_bytes", "tx_packets"};
  const auto header = split(line);
  std::array<std::size_t, 5> col{};
  for (std::size_t k = 0; k < kColumns.size(); ++k) {
    auto it = std::find(header.begin(), header.end(), kColumns[k]);
    if (it == header.end()) throw MissingColumn(std::string("trace header lacks '") + kColumns[k] + "'");
    col[k] = static_cast<std::size_t>(it - header.begin());
  }

  std::map<SliceKind, KpmStream> streams;
  for (SliceKind s : kAllSlices) streams.emplace(s, KpmStream(s));

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw ParseError(lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                                   std::to_string(cells.size()));
    KpmSample s;
    try {
      s.slice = slice_from_string(cells[col[1]]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    const auto tti = parse_double(cells[col[0]]);
    const auto thr = parse_double(cells[col[2]]);
    const auto buf = parse_double(cells[col[3]]);
    const auto pkt = parse_double(cells[col[4]]);
    if (!tti || !thr || !buf || !pkt) throw ParseError(lineno, "non-numeric field");
    if (*tti != std::floor(*tti)) throw ParseError(lineno, "tti must be an integer");
    if (!std::isfinite(*thr) || !std::isfinite(*buf) || !std::isfinite(*pkt))
      throw ParseError(lineno, "non-finite metric");
    if (*thr < 0.0 || *buf < 0.0 || *pkt < 0.0) throw ParseError(lineno, "negative metric");
    s.tti = static_cast<std::int64_t>(*tti);
    s.dl_throughput_mbps = *thr;
    s.buffer_bytes = *buf;
    s.tx_packets = *pkt;
    try {
      if (auto w = streams.at(s.slice).push_sample(s)) out.push_back(*w);
    } catch (const OutOfOrderSample& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

std::vector<KpmWindow> ingest_trace(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw FormatError("cannot open " + csv_path.string());
  return ingest_trace(in);
}

}  // namespace oran::kpm
