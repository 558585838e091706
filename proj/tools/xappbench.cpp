// Command-line front end: training, evaluation, the benchmark matrix,
// reporting, wire-protocol serving and encoder fitting.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "oran/bench/experiment.hpp"
#include "oran/errors.hpp"
#include "oran/ric/session.hpp"

namespace fs = std::filesystem;
using namespace oran;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool config_required, bool out_required) {
  auto* opt = cmd->add_option("--config", c.config, "Experiment or matrix config (JSON)");
  if (config_required) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Seed override");
  auto* out = cmd->add_option("--out", c.out, "Output directory");
  if (out_required) out->required();
}

bench::ExperimentConfig load_experiment(const std::string& path) {
  const auto j = bench::load_json(path);
  if (bench::is_matrix(j)) throw InvalidConfig(path + " is a matrix config; use bench-matrix");
  return bench::experiment_from_json(j, fs::path(path).parent_path());
}

void progress(const std::string& msg) { std::cerr << msg << '\n'; }

int cmd_train(const Common& c) {
  auto cfg = load_experiment(c.config);
  cfg.mode = bench::RunMode::Train;
  if (c.seed) cfg.training.seed = *c.seed;
  const auto r = bench::run_experiment(cfg, c.out, std::nullopt, progress);
  std::cout << r.dir.string() << '\n';
  return 0;
}

int cmd_evaluate(const Common& c, const std::string& checkpoint) {
  auto cfg = load_experiment(c.config);
  cfg.mode = bench::RunMode::Evaluate;
  if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
  if (c.seed) cfg.seeds = {*c.seed};
  const auto r = bench::run_experiment(cfg, c.out, std::nullopt, progress);
  std::cout << r.dir.string() << '\n';
  return 0;
}

int cmd_matrix(const Common& c) {
  const auto j = bench::load_json(c.config);
  auto m = bench::matrix_from_json(j, fs::path(c.config).parent_path());
  if (c.seed) m.base.training.seed = *c.seed;
  const std::string out = c.out.empty() ? "runs" : c.out;
  const auto results = bench::run_matrix(m, out, progress);
  for (const auto& r : results) std::cout << r.dir.string() << '\n';
  return 0;
}

int cmd_report(const std::string& runs, const std::string& out) {
  const auto logs = bench::load_runs(runs);
  if (logs.empty()) {
    std::cerr << "error: no logs found under " << runs << '\n';
    return 1;
  }
  bench::emit_report(out.empty() ? fs::path(runs) : fs::path(out), logs);
  return 0;
}

int cmd_serve(const Common& c, double duration_s, std::size_t subscriptions) {
  ric::SessionConfig sc;
  if (!c.config.empty()) {
    const auto cfg = load_experiment(c.config);
    sc.scenario = cfg.scenario;
    sc.runtime.log_period_ms = cfg.log_period_ms;
    sc.seed = cfg.seeds.front();
  }
  if (c.seed) sc.seed = *c.seed;
  sc.duration_tti = static_cast<std::int64_t>(duration_s * 1000.0);
  sc.expected_subscriptions = subscriptions;
  ric::StreamTransport transport(std::cin, std::cout);
  const auto result = ric::serve_wire(sc, transport);
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    std::ofstream metrics(fs::path(c.out) / "metrics.csv", std::ios::binary);
    sim::write_metric_csv(metrics, result.log);
    std::ofstream actions(fs::path(c.out) / "actions.csv", std::ios::binary);
    sim::write_action_csv(actions, result.log);
  }
  return 0;
}

int cmd_encode_fit(const Common& c) {
  bench::ExperimentConfig cfg;
  if (!c.config.empty()) cfg = load_experiment(c.config);
  if (c.seed) cfg.encoder.seed = *c.seed;
  cfg.encoder.path.reset();
  const auto enc = bench::obtain_encoder(cfg.encoder, cfg.scenario, progress);
  fs::create_directories(c.out);
  const fs::path path = fs::path(c.out) / "encoder.json";
  kpm::save_encoder(enc, path);
  std::cout << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for DRL-driven RAN slicing and scheduling xApps", "xappbench"};
  app.require_subcommand(1);

  Common train, evaluate, matrix, serve, fit;
  std::string checkpoint, runs, report_out;
  double duration_s = 60.0;
  std::size_t subscriptions = 1;

  auto* t = app.add_subcommand("train", "Train a policy, then evaluate it");
  add_common(t, train, true, true);
  auto* e = app.add_subcommand("evaluate", "Evaluate a trained checkpoint");
  add_common(e, evaluate, true, true);
  e->add_option("--checkpoint", checkpoint, "Checkpoint file (overrides the config)");
  auto* m = app.add_subcommand("bench-matrix", "Train and evaluate every configuration of a matrix");
  add_common(m, matrix, true, false);
  auto* r = app.add_subcommand("report", "Recompute medians, rankings and CDFs from run logs");
  r->add_option("--runs", runs, "Directory of run directories")->required();
  r->add_option("--out", report_out, "Report directory (default: the runs directory)");
  auto* s = app.add_subcommand("serve", "Serve the wire protocol on stdin/stdout");
  add_common(s, serve, false, false);
  s->add_option("--duration-s", duration_s, "Simulated seconds")->check(CLI::PositiveNumber);
  s->add_option("--subscriptions", subscriptions, "Subscriptions to wait for")->check(CLI::PositiveNumber);
  auto* f = app.add_subcommand("encode-fit", "Fit the KPM autoencoder");
  add_common(f, fit, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*t) return cmd_train(train);
    if (*e) return cmd_evaluate(evaluate, checkpoint);
    if (*m) return cmd_matrix(matrix);
    if (*r) return cmd_report(runs, report_out);
    if (*s) return cmd_serve(serve, duration_s, subscriptions);
    if (*f) return cmd_encode_fit(fit);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
