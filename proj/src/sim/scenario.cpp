#include "oran/sim/scenario.hpp"

#include <fstream>

#include "oran/errors.hpp"

namespace oran::sim {

using nlohmann::json;

Scenario Scenario::standard() {
  Scenario s;
  const TrafficProfile embb{TrafficKind::ConstantBitrate, 4.0e6, 1500};
  const TrafficProfile mmtc{TrafficKind::Poisson, 44.6e3, 125};
  const TrafficProfile urllc{TrafficKind::Poisson, 89.3e3, 125};
  for (int k = 0; k < 2; ++k) s.ues.push_back({SliceKind::Embb, embb, kDefaultSpectralEfficiency});
  for (int k = 0; k < 2; ++k) s.ues.push_back({SliceKind::Mmtc, mmtc, kDefaultSpectralEfficiency});
  for (int k = 0; k < 2; ++k) s.ues.push_back({SliceKind::Urllc, urllc, kDefaultSpectralEfficiency});
  return s;
}

void Scenario::validate() const {
  std::array<int, kNumSlices> per_slice{};
  for (const auto& ue : ues) {
    try {
      ue.traffic.validate();
    } catch (const InvalidProfile& e) {
      throw InvalidConfig(e.what());
    }
    if (!(ue.spectral_efficiency > 0.0)) throw InvalidConfig("spectral efficiency must be positive");
    ++per_slice[index_of(ue.slice)];
  }
  for (SliceKind s : kAllSlices)
    if (per_slice[index_of(s)] == 0)
      throw InvalidConfig("slice " + std::string(to_string(s)) + " has no UEs");
  if (auto why = partition_violation(initial_partition); !why.empty())
    throw InvalidConfig("initial partition: " + why);
  if (fading.enabled && !(fading.low > 0.0 && fading.high >= fading.low))
    throw InvalidConfig("fading range must satisfy 0 < low <= high");
}

BsState make_state(const Scenario& scenario, std::uint64_t seed) {
  scenario.validate();
  BsState st;
  st.partition = scenario.initial_partition;
  st.assignment = scenario.initial_assignment;
  st.fading = scenario.fading;
  for (std::size_t i = 0; i < scenario.ues.size(); ++i) {
    const auto& cfg = scenario.ues[i];
    Ue ue;
    ue.id = static_cast<int>(i);
    ue.slice = cfg.slice;
    ue.traffic = TrafficSource(cfg.traffic);
    ue.spectral_efficiency = cfg.spectral_efficiency;
    // Separate streams per UE and purpose: arrivals never depend on control choices.
    ue.traffic_rng = Rng::derive(seed, 2 * i);
    ue.fading_rng = Rng::derive(seed, 2 * i + 1);
    st.ues.push_back(std::move(ue));
  }
  st.pf_ewma.assign(st.ues.size(), 0.0);
  return st;
}

namespace {

std::string_view kind_name(TrafficKind k) { return k == TrafficKind::Poisson ? "poisson" : "cbr"; }

TrafficKind kind_from(const std::string& s) {
  if (s == "cbr" || s == "constant_bitrate") return TrafficKind::ConstantBitrate;
  if (s == "poisson") return TrafficKind::Poisson;
  throw InvalidConfig("unknown traffic kind '" + s + "'");
}

}  // namespace

json to_json(const Scenario& s) {
  json ues = json::array();
  for (const auto& ue : s.ues) {
    ues.push_back({{"slice", to_string(ue.slice)},
                   {"traffic",
                    {{"kind", kind_name(ue.traffic.kind)},
                     {"rate_bps", ue.traffic.rate_bps},
                     {"packet_bytes", ue.traffic.packet_bytes}}},
                   {"spectral_efficiency", ue.spectral_efficiency}});
  }
  json sched = json::array();
  for (auto k : s.initial_assignment.scheduler_per_slice) sched.push_back(to_string(k));
  return {{"ues", ues},
          {"fading", {{"enabled", s.fading.enabled}, {"low", s.fading.low}, {"high", s.fading.high}}},
          {"initial_partition", s.initial_partition.prbs_per_slice},
          {"initial_schedulers", sched},
          {"seed", s.seed}};
}

Scenario scenario_from_json(const json& j) {
  try {
    Scenario s = j.contains("ues") ? Scenario{} : Scenario::standard();
    if (j.contains("ues")) {
      for (const auto& u : j.at("ues")) {
        UeConfig cfg;
        cfg.slice = slice_from_string(u.at("slice").get<std::string>());
        const auto& t = u.at("traffic");
        cfg.traffic.kind = kind_from(t.at("kind").get<std::string>());
        cfg.traffic.rate_bps = t.at("rate_bps").get<double>();
        cfg.traffic.packet_bytes = t.at("packet_bytes").get<std::uint32_t>();
        cfg.spectral_efficiency = u.value("spectral_efficiency", kDefaultSpectralEfficiency);
        s.ues.push_back(cfg);
      }
    }
    if (j.contains("fading")) {
      const auto& f = j.at("fading");
      s.fading.enabled = f.value("enabled", false);
      s.fading.low = f.value("low", 0.6);
      s.fading.high = f.value("high", 1.4);
    }
    if (j.contains("initial_partition"))
      s.initial_partition.prbs_per_slice = j.at("initial_partition").get<std::array<int, kNumSlices>>();
    if (j.contains("initial_schedulers")) {
      const auto names = j.at("initial_schedulers").get<std::vector<std::string>>();
      if (names.size() != kNumSlices) throw InvalidConfig("initial_schedulers needs 3 entries");
      for (std::size_t i = 0; i < names.size(); ++i)
        s.initial_assignment.scheduler_per_slice[i] = scheduler_from_string(names[i]);
    }
    s.seed = j.value("seed", std::uint64_t{7});
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace oran::sim
