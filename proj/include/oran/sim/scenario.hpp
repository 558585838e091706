#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "oran/sim/base_station.hpp"

namespace oran::sim {

struct UeConfig {
  SliceKind slice = SliceKind::Embb;
  TrafficProfile traffic;
  double spectral_efficiency = kDefaultSpectralEfficiency;
};

/// Everything needed to build a fresh BsState.
struct Scenario {
  std::vector<UeConfig> ues;
  FadingConfig fading;
  PrbPartition initial_partition;
  SchedulerAssignment initial_assignment;
  std::uint64_t seed = 7;

  /// One cell, 50 PRBs, two UEs per slice: eMBB 4 Mbps CBR (1500 B),
  /// mMTC 44.6 kbps Poisson (125 B), URLLC 89.3 kbps Poisson (125 B).
  static Scenario standard();

  /// Throws InvalidConfig on a scenario that cannot be simulated.
  void validate() const;
};

/// Fresh state; the same (scenario, seed) always yields the same trajectory
/// under the same control sequence.
BsState make_state(const Scenario& scenario, std::uint64_t seed);
inline BsState reset(std::uint64_t seed) { return make_state(Scenario::standard(), seed); }

nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace oran::sim
