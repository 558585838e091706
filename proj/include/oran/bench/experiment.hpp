#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oran/agent/checkpoint.hpp"
#include "oran/bench/config.hpp"
#include "oran/bench/report.hpp"
#include "oran/kpm/encoder.hpp"

namespace oran::bench {

using Progress = std::function<void(const std::string&)>;

/// Loads the encoder named by spec.path, or fits one on windows collected
/// from the scenario under random controls.
kpm::EncoderParams obtain_encoder(const EncoderSpec& spec, const sim::Scenario& scenario,
                                  const Progress& progress = {});

/// Trains one policy for the config's action space, weights and gamma at
/// the given reporting period.
agent::PolicyCheckpoint train_policy(const ExperimentConfig& config, agent::ActionSpaceKind kind,
                                     std::int64_t period_ms, const kpm::EncoderParams& encoder,
                                     std::vector<agent::CurvePoint>* curve = nullptr,
                                     const Progress& progress = {});

/// The xApps a run deploys: one policy, or the slicing/scheduling pair of a
/// hierarchical setup at that setup's periods.
struct Deployment {
  std::vector<agent::PolicyCheckpoint> checkpoints;
  std::vector<std::int64_t> periods_ms;
  std::vector<std::string> xapp_ids;
};

/// Closed-loop evaluation of a deployment for one seed with argmax decisions.
sim::MetricLog evaluate_seed(const ExperimentConfig& config, const Deployment& deployment, std::uint64_t seed);

struct RunResult {
  std::string name;
  std::filesystem::path dir;
  std::vector<std::uint64_t> seeds;
  std::vector<sim::MetricLog> logs;  // one per seed, in seed order
};

/// Runs a single experiment into run_dir: config.json, checkpoint(s) and
/// training_curve.csv (train mode), and seed_<n>/{metrics,actions}.csv.
/// Throws InvalidConfig or MissingCheckpoint.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& run_dir,
                         const std::optional<kpm::EncoderParams>& encoder = std::nullopt,
                         const Progress& progress = {});

/// Fits one shared encoder (saved as encoder.json), runs every expanded
/// configuration into out_dir/<name>, then writes the report files to out_dir.
std::vector<RunResult> run_matrix(const MatrixConfig& matrix, const std::filesystem::path& out_dir,
                                  const Progress& progress = {});

RunLogs to_run_logs(const RunResult& r);

}  // namespace oran::bench
