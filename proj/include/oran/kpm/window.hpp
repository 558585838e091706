#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "oran/types.hpp"

namespace oran::kpm {

inline constexpr int kWindowRows = 10;  // K: measurements per window
inline constexpr int kMetrics = 3;      // M: throughput, buffer, tx packets
inline constexpr int kEncoderInput = kWindowRows * kMetrics;

/// K consecutive samples of one slice, oldest first.
struct KpmWindow {
  SliceKind slice = SliceKind::Embb;
  std::array<KpmSample, kWindowRows> rows{};

  /// Metric value; column 0 = throughput, 1 = buffer, 2 = tx packets.
  double at(int row, int column) const;
  /// Column-wise mean over the rows, stamped with the newest row's TTI.
  KpmSample mean() const;

  bool operator==(const KpmWindow&) const = default;
};

/// Windows for every slice, indexed by SliceKind.
using SliceWindows = std::array<KpmWindow, kNumSlices>;

double metric_of(const KpmSample& s, int column);

/// Tumbling-window accumulator for a single (slice, subscription) stream.
class KpmStream {
 public:
  explicit KpmStream(SliceKind slice) : slice_(slice) {}

  /// Returns a window on every 10th accepted sample. Throws OutOfOrderSample
  /// when the TTI does not advance or the sample belongs to another slice,
  /// and std::invalid_argument for a negative metric.
  std::optional<KpmWindow> push_sample(const KpmSample& sample);

  std::size_t pending() const { return pending_.size(); }
  std::uint64_t emitted() const { return emitted_; }

 private:
  SliceKind slice_;
  std::vector<KpmSample> pending_;
  std::optional<std::int64_t> last_tti_;
  std::uint64_t emitted_ = 0;
};

}  // namespace oran::kpm
