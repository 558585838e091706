#include "oran/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "oran/errors.hpp"
#include "oran/format.hpp"
#include "oran/kpm/sampler.hpp"

namespace oran::bench {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::set<std::string> kExperimentKeys{
    "name",    "scenario", "action_space", "gamma",      "weights",        "hierarchical_setup",
    "seeds",   "duration_s", "mode",       "period_ms",  "log_period_ms",  "training",
    "encoder", "checkpoint", "slicing_checkpoint",       "scheduling_checkpoint"};

std::string resolve(const std::string& p, const fs::path& base) {
  const fs::path path(p);
  if (path.is_absolute() || base.empty()) return path.string();
  return (base / path).lexically_normal().string();
}

std::pair<std::string, agent::RewardWeights> weights_entry(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "default") return {name, agent::RewardWeights::standard()};
    if (name == "alternative") return {name, agent::RewardWeights::alternative()};
    throw InvalidConfig("unknown weight configuration '" + name + "'");
  }
  if (!j.is_object()) throw InvalidConfig("weights must be a name or an object");
  return {j.value("name", std::string("custom")), agent::weights_from_json(j)};
}

json weights_json(const std::string& name, const agent::RewardWeights& w) {
  if (name == "default" && w == agent::RewardWeights::standard()) return name;
  if (name == "alternative" && w == agent::RewardWeights::alternative()) return name;
  json j = agent::to_json(w);
  j["name"] = name;
  return j;
}

void read_training(const json& j, agent::TrainConfig& t) {
  t.iterations = j.value("iterations", t.iterations);
  t.horizon = j.value("horizon", t.horizon);
  t.seed = j.value("seed", t.seed);
  auto& p = t.ppo;
  p.lr = j.value("lr", p.lr);
  p.clip_eps = j.value("clip_eps", p.clip_eps);
  p.epochs = j.value("epochs", p.epochs);
  p.minibatch_size = j.value("minibatch_size", p.minibatch_size);
  p.value_coef = j.value("value_coef", p.value_coef);
  p.entropy_coef = j.value("entropy_coef", p.entropy_coef);
  p.lambda = j.value("lambda", p.lambda);
}

json training_json(const agent::TrainConfig& t) {
  const auto& p = t.ppo;
  return {{"iterations", t.iterations}, {"horizon", t.horizon},   {"seed", t.seed},
          {"lr", p.lr},                 {"clip_eps", p.clip_eps}, {"epochs", p.epochs},
          {"minibatch_size", p.minibatch_size},                   {"value_coef", p.value_coef},
          {"entropy_coef", p.entropy_coef},                       {"lambda", p.lambda}};
}

void read_encoder(const json& j, EncoderSpec& e, const fs::path& base) {
  if (j.contains("path")) e.path = resolve(j.at("path").get<std::string>(), base);
  e.periods_ms = j.value("periods_ms", e.periods_ms);
  e.duration_ms = j.value("duration_ms", e.duration_ms);
  e.epochs = j.value("epochs", e.epochs);
  e.batch_size = j.value("batch_size", e.batch_size);
  e.lr = j.value("lr", e.lr);
  e.seed = j.value("seed", e.seed);
}

json encoder_json(const EncoderSpec& e) {
  json j{{"periods_ms", e.periods_ms}, {"duration_ms", e.duration_ms}, {"epochs", e.epochs},
         {"batch_size", e.batch_size}, {"lr", e.lr},                   {"seed", e.seed}};
  if (e.path) j["path"] = *e.path;
  return j;
}

void apply_fields(const json& j, ExperimentConfig& c, const fs::path& base) {
  if (!j.is_object()) throw InvalidConfig("experiment config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!kExperimentKeys.count(key)) throw InvalidConfig("unknown config key '" + key + "'");

  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  if (j.contains("scenario")) {
    const json& s = j.at("scenario");
    if (s.is_string()) {
      const auto ref = s.get<std::string>();
      c.scenario = ref == "standard" ? sim::Scenario::standard() : sim::load_scenario(resolve(ref, base));
    } else {
      c.scenario = sim::scenario_from_json(s);
    }
  }
  if (j.contains("action_space")) c.action_space = agent::action_space_from_string(j.at("action_space").get<std::string>());
  if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
  if (j.contains("weights")) std::tie(c.weights_name, c.weights) = weights_entry(j.at("weights"));
  if (j.contains("hierarchical_setup")) {
    if (j.at("hierarchical_setup").is_null()) c.hierarchical_setup.reset();
    else c.hierarchical_setup = j.at("hierarchical_setup").get<int>();
  }
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("duration_s")) c.duration_s = j.at("duration_s").get<double>();
  if (j.contains("mode")) {
    const auto m = j.at("mode").get<std::string>();
    if (m == "train") c.mode = RunMode::Train;
    else if (m == "evaluate") c.mode = RunMode::Evaluate;
    else throw InvalidConfig("mode must be 'train' or 'evaluate'");
  }
  if (j.contains("period_ms")) c.period_ms = j.at("period_ms").get<std::int64_t>();
  if (j.contains("log_period_ms")) c.log_period_ms = j.at("log_period_ms").get<std::int64_t>();
  if (j.contains("training")) read_training(j.at("training"), c.training);
  if (j.contains("encoder")) read_encoder(j.at("encoder"), c.encoder, base);
  if (j.contains("checkpoint")) c.checkpoint = resolve(j.at("checkpoint").get<std::string>(), base);
  if (j.contains("slicing_checkpoint")) c.slicing_checkpoint = resolve(j.at("slicing_checkpoint").get<std::string>(), base);
  if (j.contains("scheduling_checkpoint"))
    c.scheduling_checkpoint = resolve(j.at("scheduling_checkpoint").get<std::string>(), base);
  c.training.ppo.gamma = c.gamma;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidConfig(e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  guarded([&] {
    scenario.validate();
    weights.validate();
    training.ppo.validate();
    kpm::validate_period(period_ms);
    kpm::validate_period(log_period_ms);
    return 0;
  });
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidConfig("gamma must lie in [0, 1]");
  if (seeds.empty()) throw InvalidConfig("at least one seed is required");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) throw InvalidConfig("duration_s must be positive");
  if (training.iterations < 0 || training.horizon < 1) throw InvalidConfig("bad training loop size");
  if (hierarchical_setup) {
    if (action_space == agent::ActionSpaceKind::Joint)
      throw InvalidConfig("hierarchical mode composes single-parameter xApps; the joint action space is excluded");
    if (*hierarchical_setup < 1 || *hierarchical_setup > 4)
      throw InvalidConfig("hierarchical setup must be 1..4");
    if (mode == RunMode::Evaluate && (!slicing_checkpoint || !scheduling_checkpoint))
      throw InvalidConfig("hierarchical evaluation needs slicing_checkpoint and scheduling_checkpoint");
  } else if (mode == RunMode::Evaluate && !checkpoint) {
    throw InvalidConfig("evaluate mode needs a checkpoint");
  }
}

std::int64_t ExperimentConfig::duration_tti() const { return static_cast<std::int64_t>(std::llround(duration_s * 1000.0)); }

std::string ExperimentConfig::default_name() const {
  if (hierarchical_setup) return "hier" + std::to_string(*hierarchical_setup);
  return std::string(agent::to_string(action_space)) + "-g" + format_double(gamma) + "-" + weights_name;
}

ExperimentConfig experiment_from_json(const json& j, const fs::path& base_dir) {
  return guarded([&] {
    ExperimentConfig c;
    apply_fields(j, c, base_dir);
    if (c.name.empty()) c.name = c.default_name();
    return c;
  });
}

json to_json(const ExperimentConfig& c) {
  json j{{"name", c.name},
         {"scenario", sim::to_json(c.scenario)},
         {"action_space", std::string(agent::to_string(c.action_space))},
         {"gamma", c.gamma},
         {"weights", weights_json(c.weights_name, c.weights)},
         {"seeds", c.seeds},
         {"duration_s", c.duration_s},
         {"mode", c.mode == RunMode::Train ? "train" : "evaluate"},
         {"period_ms", c.period_ms},
         {"log_period_ms", c.log_period_ms},
         {"training", training_json(c.training)},
         {"encoder", encoder_json(c.encoder)}};
  if (c.hierarchical_setup) j["hierarchical_setup"] = *c.hierarchical_setup;
  if (c.checkpoint) j["checkpoint"] = *c.checkpoint;
  if (c.slicing_checkpoint) j["slicing_checkpoint"] = *c.slicing_checkpoint;
  if (c.scheduling_checkpoint) j["scheduling_checkpoint"] = *c.scheduling_checkpoint;
  return j;
}

std::vector<ExperimentConfig> MatrixConfig::expand() const {
  std::vector<ExperimentConfig> out;
  for (auto kind : action_spaces)
    for (double g : gammas)
      for (const auto& [wname, w] : weights) {
        ExperimentConfig c = base;
        c.action_space = kind;
        c.gamma = g;
        c.training.ppo.gamma = g;
        c.weights_name = wname;
        c.weights = w;
        c.hierarchical_setup.reset();
        c.name = c.default_name();
        out.push_back(std::move(c));
      }
  return out;
}

bool is_matrix(const json& j) { return j.is_object() && j.contains("matrix"); }

MatrixConfig matrix_from_json(const json& j, const fs::path& base_dir) {
  return guarded([&] {
    if (!is_matrix(j)) throw InvalidConfig("not a matrix config (missing \"matrix\")");
    for (const auto& [key, _] : j.items())
      if (key != "matrix" && key != "base") throw InvalidConfig("unknown matrix config key '" + key + "'");
    MatrixConfig m;
    if (j.contains("base")) apply_fields(j.at("base"), m.base, base_dir);
    const json& mx = j.at("matrix");
    for (const auto& s : mx.at("action_spaces")) m.action_spaces.push_back(agent::action_space_from_string(s.get<std::string>()));
    m.gammas = mx.at("gammas").get<std::vector<double>>();
    for (const auto& w : mx.at("weights")) m.weights.push_back(weights_entry(w));
    if (m.action_spaces.empty() || m.gammas.empty() || m.weights.empty())
      throw InvalidConfig("matrix axes must be non-empty");
    std::set<std::string> names;
    for (const auto& c : m.expand())
      if (!names.insert(c.name).second) throw InvalidConfig("duplicate run name " + c.name);
    return m;
  });
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

}  // namespace oran::bench
