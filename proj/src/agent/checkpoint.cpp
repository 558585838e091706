#include "oran/agent/checkpoint.hpp"

#include <fstream>

#include "oran/errors.hpp"

namespace oran::agent {

nlohmann::json to_json(const PolicyCheckpoint& c) {
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"action_space", std::string(to_string(c.kind))},
          {"actions", ActionSpace(c.kind).size()},
          {"gamma", c.gamma},
          {"weights", to_json(c.weights)},
          {"period_ms", c.period_ms},
          {"encoder_ref", c.encoder_ref},
          {"encoder", kpm::to_json(c.encoder)},
          {"actor", nn::to_json(c.params.actor)},
          {"critic", nn::to_json(c.params.critic)},
          {"value_norm",
           {{"mean", c.params.value_norm.mean}, {"m2", c.params.value_norm.m2}, {"count", c.params.value_norm.count}}}};
}

PolicyCheckpoint checkpoint_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat) throw FormatError("not a policy checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw FormatError("unsupported checkpoint version " + j.at("version").dump());
    PolicyCheckpoint c;
    c.kind = action_space_from_string(j.at("action_space").get<std::string>());
    c.gamma = j.at("gamma").get<double>();
    c.weights = weights_from_json(j.at("weights"));
    c.period_ms = j.at("period_ms").get<std::int64_t>();
    c.encoder_ref = j.value("encoder_ref", std::string());
    c.encoder = kpm::encoder_from_json(j.at("encoder"));
    c.params.actor = nn::mlp_from_json(j.at("actor"));
    c.params.critic = nn::mlp_from_json(j.at("critic"));
    const auto& vn = j.at("value_norm");
    c.params.value_norm = {vn.at("mean").get<double>(), vn.at("m2").get<double>(), vn.at("count").get<double>()};

    const std::vector<int> hidden(kHiddenLayers, kHiddenWidth);
    auto expect = [&](const nn::Mlp& net, int out, const char* name) {
      std::vector<int> w{kStateWidth};
      w.insert(w.end(), hidden.begin(), hidden.end());
      w.push_back(out);
      if (net.widths() != w) throw FormatError(std::string(name) + " has unexpected layer widths");
    };
    expect(c.params.actor, static_cast<int>(ActionSpace(c.kind).size()), "actor");
    expect(c.params.critic, 1, "critic");
    if (!c.params.all_finite()) throw FormatError("checkpoint has non-finite parameters");
    return c;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const PolicyCheckpoint& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << to_json(c).dump() << '\n';
}

PolicyCheckpoint load_checkpoint(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw MissingCheckpoint(path.string());
  std::ifstream in(path);
  if (!in) throw MissingCheckpoint("cannot open " + path.string());
  try {
    return checkpoint_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace oran::agent
