#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oran/agent/action_space.hpp"
#include "oran/agent/reward.hpp"
#include "oran/agent/trainer.hpp"
#include "oran/sim/scenario.hpp"

namespace oran::bench {

enum class RunMode : std::uint8_t { Train, Evaluate };

/// How the shared KPM encoder is obtained: loaded from `path`, or fitted on
/// windows collected under random controls.
struct EncoderSpec {
  std::optional<std::string> path;
  std::vector<std::int64_t> periods_ms{1000, 5000, 10000};
  std::int64_t duration_ms = 200000;  // per period
  int epochs = 30;
  int batch_size = 32;
  double lr = 1e-3;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  std::string name;
  sim::Scenario scenario = sim::Scenario::standard();
  agent::ActionSpaceKind action_space = agent::ActionSpaceKind::SlicingOnly;
  double gamma = 0.99;
  std::string weights_name = "default";  // "default", "alternative" or a custom label
  agent::RewardWeights weights = agent::RewardWeights::standard();
  std::optional<int> hierarchical_setup;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  double duration_s = 600.0;
  RunMode mode = RunMode::Train;
  std::int64_t period_ms = 1000;
  std::int64_t log_period_ms = 100;
  agent::TrainConfig training;
  EncoderSpec encoder;
  std::optional<std::string> checkpoint;             // evaluate mode, single xApp
  std::optional<std::string> slicing_checkpoint;     // hierarchical mode
  std::optional<std::string> scheduling_checkpoint;  // hierarchical mode

  /// Throws InvalidConfig (e.g. hierarchical with the joint action space).
  void validate() const;
  std::int64_t duration_tti() const;
  /// "<space>-g<gamma>-<weights>", or "hier<id>" for hierarchical runs.
  std::string default_name() const;
};

/// Relative paths inside the JSON resolve against base_dir.
ExperimentConfig experiment_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const ExperimentConfig& c);

/// Cartesian product of action spaces x gammas x weight configurations
/// over shared base settings.
struct MatrixConfig {
  ExperimentConfig base;
  std::vector<agent::ActionSpaceKind> action_spaces;
  std::vector<double> gammas;
  std::vector<std::pair<std::string, agent::RewardWeights>> weights;

  std::vector<ExperimentConfig> expand() const;
};

bool is_matrix(const nlohmann::json& j);
MatrixConfig matrix_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace oran::bench
