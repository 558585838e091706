#pragma once

#include <span>
#include <utility>
#include <vector>

namespace oran::bench {

/// Middle value; mean of the two middle values for an even count.
/// Throws EmptySamples.
double median(std::span<const double> samples);

/// (value, P[X <= value]) for each distinct value, ascending. Throws EmptySamples.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples);

}  // namespace oran::bench
