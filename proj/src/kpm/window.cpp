#include "oran/kpm/window.hpp"

#include <stdexcept>
#include <string>

#include "oran/errors.hpp"

namespace oran::kpm {

double metric_of(const KpmSample& s, int column) {
  switch (column) {
    case 0: return s.dl_throughput_mbps;
    case 1: return s.buffer_bytes;
    case 2: return s.tx_packets;
  }
  throw std::out_of_range("metric column " + std::to_string(column));
}

double KpmWindow::at(int row, int column) const { return metric_of(rows.at(static_cast<std::size_t>(row)), column); }

KpmSample KpmWindow::mean() const {
  KpmSample m;
  m.slice = slice;
  m.tti = rows.back().tti;
  for (const auto& r : rows) {
    m.dl_throughput_mbps += r.dl_throughput_mbps;
    m.buffer_bytes += r.buffer_bytes;
    m.tx_packets += r.tx_packets;
  }
  m.dl_throughput_mbps /= kWindowRows;
  m.buffer_bytes /= kWindowRows;
  m.tx_packets /= kWindowRows;
  return m;
}

std::optional<KpmWindow> KpmStream::push_sample(const KpmSample& sample) {
  if (sample.slice != slice_)
    throw OutOfOrderSample("sample for " + std::string(to_string(sample.slice)) + " pushed to " +
                           std::string(to_string(slice_)) + " stream");
  if (last_tti_ && sample.tti <= *last_tti_)
    throw OutOfOrderSample("tti " + std::to_string(sample.tti) + " after " + std::to_string(*last_tti_));
  if (sample.dl_throughput_mbps < 0.0 || sample.buffer_bytes < 0.0 || sample.tx_packets < 0.0)
    throw std::invalid_argument("KPM sample with a negative metric");
  last_tti_ = sample.tti;
  pending_.push_back(sample);
  if (pending_.size() < static_cast<std::size_t>(kWindowRows)) return std::nullopt;

  KpmWindow w;
  w.slice = slice_;
  std::copy(pending_.begin(), pending_.end(), w.rows.begin());
  pending_.clear();
  ++emitted_;
  return w;
}

}  // namespace oran::kpm
