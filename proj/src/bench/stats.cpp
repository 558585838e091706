#include "oran/bench/stats.hpp"

#include <algorithm>

#include "oran/errors.hpp"

namespace oran::bench {

double median(std::span<const double> samples) {
  if (samples.empty()) throw EmptySamples("median of nothing");
  std::vector<double> v(samples.begin(), samples.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples) {
  if (samples.empty()) throw EmptySamples("CDF of nothing");
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  const auto n = static_cast<double>(v.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    out.emplace_back(v[i], i + 1 == v.size() ? 1.0 : static_cast<double>(i + 1) / n);
  }
  return out;
}

}  // namespace oran::bench
