#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "oran/kpm/window.hpp"

namespace oran::kpm {

inline constexpr const char* kTraceHeader = "tti,slice,dl_throughput_mbps,buffer_bytes,tx_packets";

/// Reads a KPM trace CSV (same layout as the metrics export) and windows it
/// per slice with tumbling semantics. Throws MissingColumn for a header
/// lacking a required column and ParseError with the line number for a bad row.
std::vector<KpmWindow> ingest_trace(std::istream& in);
std::vector<KpmWindow> ingest_trace(const std::filesystem::path& csv_path);

}  // namespace oran::kpm
