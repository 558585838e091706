#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "oran/sim/measurement.hpp"

namespace oran::bench {

using MetricPtr = double KpmSample::*;

/// The KPM a slice is judged by: eMBB throughput, mMTC tx packets, URLLC buffer.
MetricPtr slice_metric(SliceKind s);
/// Throughput and packets are maximised, buffer occupancy minimised.
bool higher_is_better(SliceKind s);

struct RunLogs {
  std::string name;
  std::vector<sim::MetricLog> logs;  // one per seed
};

struct ConfigSummary {
  std::string name;
  /// Median of the slice's own KPM over every logged sample of every seed.
  std::array<double, kNumSlices> median{};
};

ConfigSummary summarize(const RunLogs& run);
/// Median of one slice metric within a single log.
double log_median(const sim::MetricLog& log, SliceKind slice);

struct RankingReport {
  /// Config names best first, per slice.
  std::array<std::vector<std::string>, kNumSlices> order;
};

/// Orders configurations by the slice's median in the slice's direction;
/// ties go to the lexicographically smaller name.
std::vector<std::string> rank_slice(std::span<const ConfigSummary> summaries, SliceKind slice);
RankingReport rank_policies(std::span<const ConfigSummary> summaries);

inline constexpr const char* kMediansHeader = "config,embb_throughput_mbps,mmtc_tx_packets,urllc_buffer_bytes";
inline constexpr const char* kRankingHeader = "slice,rank,config,median";
inline constexpr const char* kCdfHeader = "config,value,probability";

std::string medians_csv(std::span<const ConfigSummary> summaries);
std::string ranking_csv(const RankingReport& ranking, std::span<const ConfigSummary> summaries);

/// Writes medians.csv, ranking.csv and cdf_<slice>_<metric>.csv (every
/// slice x metric pair) into dir. Throws EmptySamples when runs is empty.
void emit_report(const std::filesystem::path& dir, std::span<const RunLogs> runs);

/// Every run directory under root holding seed_*/metrics.csv, sorted by name.
std::vector<RunLogs> load_runs(const std::filesystem::path& root);

}  // namespace oran::bench
