#include "oran/bench/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "oran/bench/stats.hpp"
#include "oran/errors.hpp"
#include "oran/format.hpp"

namespace oran::bench {

namespace fs = std::filesystem;

MetricPtr slice_metric(SliceKind s) {
  switch (s) {
    case SliceKind::Embb: return &KpmSample::dl_throughput_mbps;
    case SliceKind::Mmtc: return &KpmSample::tx_packets;
    case SliceKind::Urllc: return &KpmSample::buffer_bytes;
  }
  return &KpmSample::dl_throughput_mbps;
}

bool higher_is_better(SliceKind s) { return s != SliceKind::Urllc; }

namespace {

struct MetricColumn {
  const char* name;
  MetricPtr member;
};
constexpr std::array<MetricColumn, 3> kColumns{{{"throughput", &KpmSample::dl_throughput_mbps},
                                                 {"buffer", &KpmSample::buffer_bytes},
                                                 {"packets", &KpmSample::tx_packets}}};

std::vector<double> pooled(const RunLogs& run, SliceKind s, MetricPtr m) {
  std::vector<double> v;
  for (const auto& log : run.logs) {
    const auto part = log.values(s, m);
    v.insert(v.end(), part.begin(), part.end());
  }
  return v;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

ConfigSummary summarize(const RunLogs& run) {
  ConfigSummary s{run.name, {}};
  for (SliceKind k : kAllSlices) {
    const auto v = pooled(run, k, slice_metric(k));
    if (v.empty()) throw EmptySamples("run " + run.name + " has no " + std::string(to_string(k)) + " samples");
    s.median[index_of(k)] = median(v);
  }
  return s;
}

double log_median(const sim::MetricLog& log, SliceKind slice) {
  return median(log.values(slice, slice_metric(slice)));
}

std::vector<std::string> rank_slice(std::span<const ConfigSummary> summaries, SliceKind slice) {
  std::vector<const ConfigSummary*> v;
  for (const auto& s : summaries) v.push_back(&s);
  const std::size_t i = index_of(slice);
  const bool up = higher_is_better(slice);
  std::sort(v.begin(), v.end(), [&](const ConfigSummary* a, const ConfigSummary* b) {
    if (a->median[i] != b->median[i]) return up ? a->median[i] > b->median[i] : a->median[i] < b->median[i];
    return a->name < b->name;
  });
  std::vector<std::string> out;
  for (const auto* s : v) out.push_back(s->name);
  return out;
}

RankingReport rank_policies(std::span<const ConfigSummary> summaries) {
  RankingReport r;
  for (SliceKind s : kAllSlices) r.order[index_of(s)] = rank_slice(summaries, s);
  return r;
}

std::string medians_csv(std::span<const ConfigSummary> summaries) {
  std::ostringstream out;
  out << kMediansHeader << '\n';
  for (const auto& s : summaries)
    out << s.name << ',' << format_double(s.median[0]) << ',' << format_double(s.median[1]) << ','
        << format_double(s.median[2]) << '\n';
  return out.str();
}

std::string ranking_csv(const RankingReport& ranking, std::span<const ConfigSummary> summaries) {
  std::ostringstream out;
  out << kRankingHeader << '\n';
  for (SliceKind s : kAllSlices) {
    const auto& order = ranking.order[index_of(s)];
    for (std::size_t r = 0; r < order.size(); ++r) {
      const auto it = std::find_if(summaries.begin(), summaries.end(),
                                   [&](const ConfigSummary& c) { return c.name == order[r]; });
      if (it == summaries.end()) throw std::invalid_argument("ranking names an unknown config " + order[r]);
      out << to_string(s) << ',' << r + 1 << ',' << order[r] << ',' << format_double(it->median[index_of(s)]) << '\n';
    }
  }
  return out.str();
}

void emit_report(const fs::path& dir, std::span<const RunLogs> runs) {
  if (runs.empty()) throw EmptySamples("no runs to report");
  std::vector<ConfigSummary> summaries;
  for (const auto& r : runs) summaries.push_back(summarize(r));
  const RankingReport ranking = rank_policies(summaries);

  fs::create_directories(dir);
  write_file(dir / "medians.csv", medians_csv(summaries));
  write_file(dir / "ranking.csv", ranking_csv(ranking, summaries));
  for (SliceKind s : kAllSlices)
    for (const auto& col : kColumns) {
      std::ostringstream out;
      out << kCdfHeader << '\n';
      for (const auto& run : runs)
        for (const auto& [value, p] : empirical_cdf(pooled(run, s, col.member)))
          out << run.name << ',' << format_double(value) << ',' << format_double(p) << '\n';
      write_file(dir / ("cdf_" + lower(to_string(s)) + "_" + col.name + ".csv"), out.str());
    }
}

std::vector<RunLogs> load_runs(const fs::path& root) {
  std::vector<RunLogs> runs;
  if (!fs::is_directory(root)) return runs;
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    std::vector<fs::path> seeds;
    for (const auto& e : fs::directory_iterator(d))
      if (e.is_directory() && e.path().filename().string().rfind("seed_", 0) == 0 &&
          fs::exists(e.path() / "metrics.csv"))
        seeds.push_back(e.path());
    if (seeds.empty()) continue;
    std::sort(seeds.begin(), seeds.end());
    RunLogs run{d.filename().string(), {}};
    for (const auto& s : seeds) run.logs.push_back(sim::read_metric_csv(s / "metrics.csv"));
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace oran::bench
