#include "oran/bench/experiment.hpp"

#include <fstream>
#include <memory>

#include "oran/agent/env.hpp"
#include "oran/errors.hpp"
#include "oran/format.hpp"
#include "oran/kpm/sampler.hpp"
#include "oran/ric/runtime.hpp"

namespace oran::bench {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

void say(const Progress& p, const std::string& msg) {
  if (p) p(msg);
}

}  // namespace

kpm::EncoderParams obtain_encoder(const EncoderSpec& spec, const sim::Scenario& scenario, const Progress& progress) {
  if (spec.path) return kpm::load_encoder(*spec.path);
  say(progress, "collecting encoder training windows");
  const auto windows = kpm::collect_windows(scenario, spec.periods_ms, spec.duration_ms, spec.seed);
  kpm::AutoencoderConfig ac;
  ac.epochs = spec.epochs;
  ac.batch_size = spec.batch_size;
  ac.lr = spec.lr;
  ac.seed = spec.seed;
  const auto fit = kpm::train_autoencoder(windows, ac);
  say(progress, "encoder fitted on " + std::to_string(windows.size()) + " windows, mse " +
                    format_double(fit.initial_mse) + " -> " + format_double(fit.final_mse));
  return fit.encoder;
}

agent::PolicyCheckpoint train_policy(const ExperimentConfig& config, agent::ActionSpaceKind kind,
                                     std::int64_t period_ms, const kpm::EncoderParams& encoder,
                                     std::vector<agent::CurvePoint>* curve, const Progress& progress) {
  agent::ClosedLoopEnv env(config.scenario, encoder, kind, config.weights, period_ms);
  agent::TrainConfig tc = config.training;
  tc.ppo.gamma = config.gamma;
  const std::string label = config.name + " [" + std::string(agent::to_string(kind)) + "]";
  auto result = agent::train(env, tc, [&](const agent::CurvePoint& p) {
    if (progress && (p.iteration + 1) % 25 == 0)
      progress(label + " iteration " + std::to_string(p.iteration + 1) + "/" + std::to_string(tc.iterations) +
               " mean reward " + format_double(p.mean_step_reward));
  });
  if (curve) *curve = std::move(result.curve);

  agent::PolicyCheckpoint c;
  c.kind = kind;
  c.gamma = config.gamma;
  c.weights = config.weights;
  c.period_ms = period_ms;
  c.encoder_ref = config.encoder.path.value_or("fitted");
  c.encoder = encoder;
  c.params = std::move(result.params);
  return c;
}

sim::MetricLog evaluate_seed(const ExperimentConfig& config, const Deployment& deployment, std::uint64_t seed) {
  ric::RicRuntime runtime({config.log_period_ms, 10.0});
  for (std::size_t i = 0; i < deployment.checkpoints.size(); ++i)
    runtime.subscribe(ric::PolicyXapp::from_checkpoint(deployment.xapp_ids[i], deployment.checkpoints[i],
                                                       deployment.periods_ms[i]));
  sim::BsState state = sim::make_state(config.scenario, seed);
  return runtime.run_control_loop(state, config.duration_tti());
}

RunResult run_experiment(const ExperimentConfig& config, const fs::path& run_dir,
                         const std::optional<kpm::EncoderParams>& encoder, const Progress& progress) {
  config.validate();
  fs::create_directories(run_dir);
  write_text(run_dir / "config.json", to_json(config).dump(2) + "\n");

  Deployment d;
  if (config.hierarchical_setup) {
    const auto setup = ric::HierarchicalSetup::from_id(*config.hierarchical_setup);
    d.periods_ms = {setup.slicing_period_ms, setup.sched_period_ms};
    d.xapp_ids = {"slicing", "scheduling"};
    if (config.mode == RunMode::Train) {
      const kpm::EncoderParams enc = encoder ? *encoder : obtain_encoder(config.encoder, config.scenario, progress);
      const agent::ActionSpaceKind kinds[] = {agent::ActionSpaceKind::SlicingOnly,
                                              agent::ActionSpaceKind::SchedulingOnly};
      for (int i = 0; i < 2; ++i) {
        std::vector<agent::CurvePoint> curve;
        d.checkpoints.push_back(train_policy(config, kinds[i], d.periods_ms[static_cast<std::size_t>(i)], enc, &curve, progress));
        const std::string tag(agent::to_string(kinds[i]));
        agent::save_checkpoint(d.checkpoints.back(), run_dir / (tag + "_checkpoint.json"));
        std::ofstream out(run_dir / ("training_curve_" + tag + ".csv"));
        agent::write_training_curve(out, curve);
      }
    } else {
      d.checkpoints.push_back(agent::load_checkpoint(*config.slicing_checkpoint));
      d.checkpoints.push_back(agent::load_checkpoint(*config.scheduling_checkpoint));
      if (d.checkpoints[0].kind != agent::ActionSpaceKind::SlicingOnly ||
          d.checkpoints[1].kind != agent::ActionSpaceKind::SchedulingOnly)
        throw InvalidConfig("hierarchical setups need a slicing-only and a scheduling-only checkpoint");
      agent::save_checkpoint(d.checkpoints[0], run_dir / "slicing_checkpoint.json");
      agent::save_checkpoint(d.checkpoints[1], run_dir / "scheduling_checkpoint.json");
    }
  } else {
    d.periods_ms = {config.period_ms};
    d.xapp_ids = {config.name};
    if (config.mode == RunMode::Train) {
      const kpm::EncoderParams enc = encoder ? *encoder : obtain_encoder(config.encoder, config.scenario, progress);
      std::vector<agent::CurvePoint> curve;
      d.checkpoints.push_back(train_policy(config, config.action_space, config.period_ms, enc, &curve, progress));
      std::ofstream out(run_dir / "training_curve.csv");
      agent::write_training_curve(out, curve);
    } else {
      d.checkpoints.push_back(agent::load_checkpoint(*config.checkpoint));
      if (d.checkpoints[0].kind != config.action_space)
        throw InvalidConfig("checkpoint controls '" + std::string(agent::to_string(d.checkpoints[0].kind)) +
                            "' but the config declares '" + std::string(agent::to_string(config.action_space)) + "'");
    }
    agent::save_checkpoint(d.checkpoints[0], run_dir / "checkpoint.json");
  }

  RunResult result{config.name, run_dir, config.seeds, {}};
  for (std::uint64_t seed : config.seeds) {
    say(progress, config.name + " evaluating seed " + std::to_string(seed));
    sim::MetricLog log = evaluate_seed(config, d, seed);
    const fs::path seed_dir = run_dir / ("seed_" + std::to_string(seed));
    fs::create_directories(seed_dir);
    std::ofstream metrics(seed_dir / "metrics.csv", std::ios::binary);
    sim::write_metric_csv(metrics, log);
    std::ofstream actions(seed_dir / "actions.csv", std::ios::binary);
    sim::write_action_csv(actions, log);
    result.logs.push_back(std::move(log));
  }
  return result;
}

RunLogs to_run_logs(const RunResult& r) { return {r.name, r.logs}; }

std::vector<RunResult> run_matrix(const MatrixConfig& matrix, const fs::path& out_dir, const Progress& progress) {
  const auto configs = matrix.expand();
  for (const auto& c : configs) c.validate();
  fs::create_directories(out_dir);
  const kpm::EncoderParams encoder = obtain_encoder(matrix.base.encoder, matrix.base.scenario, progress);
  kpm::save_encoder(encoder, out_dir / "encoder.json");

  std::vector<RunResult> results;
  std::vector<RunLogs> logs;
  for (const auto& c : configs) {
    say(progress, "run " + c.name);
    results.push_back(run_experiment(c, out_dir / c.name, encoder, progress));
    logs.push_back(to_run_logs(results.back()));
  }
  emit_report(out_dir, logs);
  return results;
}

}  // namespace oran::bench
