// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <CLI11.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oran/agent/policy.hpp"
#include "oran/agent/ppo.hpp"
#include "oran/agent/returns.hpp"
#include "oran/agent/reward.hpp"
#include "oran/bench/experiment.hpp"
#include "oran/bench/stats.hpp"
#include "oran/errors.hpp"
#include "oran/format.hpp"
#include "oran/kpm/encoder.hpp"
#include "oran/kpm/sampler.hpp"
#include "oran/ric/runtime.hpp"
#include "oran/ric/session.hpp"
#include "oran/ric/wire.hpp"
#include "oran/sim/scenario.hpp"

using namespace oran;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

// ---------------------------------------------------------------- 1

Outcome weight_arithmetic() {
  const auto w = agent::compute_weights(1.0, 456.0, 1.0, 1.0, 304.0, 20186.0);
  const bool mmtc = w.mmtc == 1.5;
  const bool urllc = w.urllc >= 4.95e-5 && w.urllc <= 4.96e-5;
  const bool table = std::abs(agent::RewardWeights::standard().urllc - w.urllc) < 1e-6;
  return {mmtc && urllc && table, "w_mMTC=" + fmt(w.mmtc) + " w_URLLC=" + fmt(w.urllc)};
}

// ---------------------------------------------------------------- 2

Outcome return_oracles() {
  Rng rng(2024);
  const double gammas[] = {0.0, 0.5, 0.99, 1.0};
  double worst_return = 0.0, worst_gae = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double g = gammas[trial % 4];
    const std::size_t n = 1 + rng.below(20);
    std::vector<double> r(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = rng.uniform(-10, 10);
      v[i] = rng.uniform(-10, 10);
    }
    const auto got = agent::discounted_return(r, g);
    const auto adv = agent::gae_advantages(r, v, 0.0, g, 1.0);
    for (std::size_t t = 0; t < n; ++t) {
      double brute = 0.0, power = 1.0;
      for (std::size_t k = t; k < n; ++k, power *= g) brute += power * r[k];
      worst_return = std::max(worst_return, std::abs(got[t] - brute));
      worst_gae = std::max(worst_gae, std::abs(adv[t] - (brute - v[t])));
    }
  }
  return {worst_return <= 1e-9 && worst_gae <= 1e-9,
          "max |G - oracle| " + fmt(worst_return) + ", max |A - (G - V)| " + fmt(worst_gae) + " over 1000 sequences"};
}

// ---------------------------------------------------------------- 3

template <class Loss>
double fd_error(nn::Mlp& net, const std::vector<double>& analytic, Loss loss, Rng& rng, std::size_t max_coords) {
  auto flat = net.flatten();
  std::vector<std::size_t> coords(flat.size());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  if (coords.size() > max_coords) {
    for (std::size_t i = 0; i < max_coords; ++i) std::swap(coords[i], coords[i + rng.below(coords.size() - i)]);
    coords.resize(max_coords);
  }
  const double h = 1e-6;
  double num = 0.0, den = 0.0;
  for (std::size_t i : coords) {
    const double orig = flat[i];
    flat[i] = orig + h;
    net.assign(flat);
    const double up = loss();
    flat[i] = orig - h;
    net.assign(flat);
    const double down = loss();
    flat[i] = orig;
    net.assign(flat);
    const double fd = (up - down) / (2 * h);
    num += (fd - analytic[i]) * (fd - analytic[i]);
    den += analytic[i] * analytic[i];
  }
  return std::sqrt(num / den);
}

Outcome gradient_checks() {
  Rng rng(33);
  double worst_ppo = 0.0, worst_ae = 0.0;
  int batches = 0;
  const std::size_t sizes[] = {27, 36, 972};
  for (std::size_t n_actions : sizes) {
    auto p = agent::PolicyParams::initial(n_actions, rng);
    for (auto& l : p.actor.layers()) l.weight *= 3.0;
    p.value_norm.update(std::vector<double>{-3.0, 1.0, 6.0});
    agent::PpoConfig cfg;
    agent::PreparedBatch b;
    b.states.resize(agent::kStateWidth, 4);
    for (int i = 0; i < 4; ++i) {
      agent::State s{};
      for (double& x : s) x = rng.uniform(-2, 2);
      for (int r = 0; r < agent::kStateWidth; ++r) b.states(r, i) = s[static_cast<std::size_t>(r)];
      const auto d = agent::actor_forward(p, s);
      const std::size_t a = rng.below(n_actions);
      double shift = 0.0;
      do shift = rng.uniform(-0.5, 0.5);
      while (std::abs(std::exp(shift) - 0.8) < 1e-3 || std::abs(std::exp(shift) - 1.2) < 1e-3);
      b.actions.push_back(a);
      b.old_log_probs.push_back(d.log_probs[a] - shift);
      b.advantages.push_back(rng.uniform(-1.5, 1.5));
      b.returns.push_back(rng.uniform(-5, 5));
    }
    const auto loss = agent::ppo_loss(p, b, cfg, true);
    auto total = [&] { return agent::ppo_loss(p, b, cfg, false).total; };
    worst_ppo = std::max(worst_ppo, fd_error(p.actor, nn::Mlp::flatten(loss.actor_grad), total, rng, SIZE_MAX));
    worst_ppo = std::max(worst_ppo, fd_error(p.critic, nn::Mlp::flatten(loss.critic_grad), total, rng, SIZE_MAX));

    nn::Mlp enc(kpm::EncoderParams::layer_widths(), nn::Activation::Relu, nn::Activation::Identity, rng);
    nn::Mlp dec({3, 32, 128, 256, 30}, nn::Activation::Relu, nn::Activation::Identity, rng);
    Eigen::MatrixXd x(30, 4);
    for (int i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
    const auto ae = kpm::reconstruction_loss(enc, dec, x, true);
    auto mse = [&] { return kpm::reconstruction_loss(enc, dec, x, false).mse; };
    // Coordinates are sampled: the autoencoder has ~90k parameters.
    worst_ae = std::max(worst_ae, fd_error(enc, nn::Mlp::flatten(ae.encoder_grad), mse, rng, 4000));
    worst_ae = std::max(worst_ae, fd_error(dec, nn::Mlp::flatten(ae.decoder_grad), mse, rng, 4000));
    ++batches;
  }
  return {worst_ppo <= 1e-4 && worst_ae <= 1e-4,
          std::to_string(batches) + " batches each; PPO rel. err " + fmt(worst_ppo) + ", autoencoder rel. err " +
              fmt(worst_ae)};
}

// ---------------------------------------------------------------- 4

struct FuzzRun {
  std::string metrics;
  std::vector<sim::UeCounters> totals;
  std::vector<std::string> violations;
};

FuzzRun fuzz(const sim::Scenario& scenario, std::uint64_t seed, std::int64_t ttis) {
  FuzzRun out;
  sim::BsState st = sim::make_state(scenario, seed);
  Rng ctl(Rng::mix(seed, 99));
  sim::MetricLog log;
  sim::CounterSnapshot start = sim::snapshot(st);
  std::int64_t next_control = 1 + static_cast<std::int64_t>(ctl.below(2000));
  auto flag = [&](const std::string& what) {
    if (out.violations.size() < 5) out.violations.push_back("tti " + std::to_string(st.tti) + ": " + what);
  };
  for (std::int64_t t = 1; t <= ttis; ++t) {
    const auto r = sim::step(st);
    if (!partition_violation(r.partition).empty()) flag("illegal partition in effect");
    std::array<int, kNumSlices> per_slice{};
    int total = 0;
    for (std::size_t u = 0; u < st.ues.size(); ++u) {
      if (r.grants[u] < 0) flag("negative grant");
      per_slice[index_of(st.ues[u].slice)] += r.grants[u];
      total += r.grants[u];
      const auto& c = st.ues[u].totals;
      if (c.served_bytes > c.arrived_bytes) flag("served more than arrived");
      if (st.ues[u].buffer.bytes() != c.arrived_bytes - c.served_bytes) flag("buffer inconsistent with counters");
      const auto& prof = st.ues[u].traffic.profile();
      if (prof.kind == sim::TrafficKind::ConstantBitrate &&
          static_cast<double>(c.served_bytes) > prof.rate_bps * static_cast<double>(st.tti) / 8000.0 + prof.packet_bytes)
        flag("served above the offered CBR load");
    }
    if (total > kTotalPrbs) flag("more than 50 PRBs granted");
    for (SliceKind s : kAllSlices)
      if (per_slice[index_of(s)] > r.partition[s]) flag("slice exceeded its share");
    if (t % 100 == 0) {
      for (SliceKind s : kAllSlices) log.samples.push_back(sim::measure_kpm(st, s, start));
      start = sim::snapshot(st);
    }
    if (t == next_control) {
      const bool part = ctl.below(2) == 0, sched = ctl.below(2) == 0;
      sim::apply_control(st, part ? std::optional(kpm::random_partition(ctl)) : std::nullopt,
                         sched ? std::optional(kpm::random_assignment(ctl)) : std::nullopt);
      next_control = t + 1 + static_cast<std::int64_t>(ctl.below(2000));
    }
  }
  out.metrics = sim::metric_csv(log);
  out.totals = sim::snapshot(st).totals;
  return out;
}

Outcome simulator_invariants() {
  sim::Scenario faded = sim::Scenario::standard();
  faded.fading.enabled = true;
  sim::Scenario heavy = faded;  // saturating eMBB and URLLC load stresses isolation
  for (auto& u : heavy.ues) {
    if (u.slice == SliceKind::Embb) u.traffic.rate_bps = 12e6;
    if (u.slice == SliceKind::Urllc) u.traffic.rate_bps = 3e6;
  }
  std::vector<std::string> problems;
  bool deterministic = true;
  for (const auto* sc : {&faded, &heavy}) {
    const auto a = fuzz(*sc, 11, 100000);
    const auto b = fuzz(*sc, 11, 100000);
    problems.insert(problems.end(), a.violations.begin(), a.violations.end());
    deterministic = deterministic && a.metrics == b.metrics && a.totals == b.totals;
  }
  std::string detail = "2 scenarios x 1e5 TTIs with fading and random controls";
  if (!deterministic) detail += "; same-seed runs differ";
  if (!problems.empty()) detail += "; " + problems.front();
  return {problems.empty() && deterministic, detail};
}

// ---------------------------------------------------------------- 5

Outcome learning_sanity(const fs::path& work) {
  const auto scenario = sim::Scenario::standard();
  const auto encoder = bench::obtain_encoder(bench::EncoderSpec{}, scenario);

  // Exhaustive oracle: eMBB median of every static partition.
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const std::int64_t duration = 600000;
  const agent::ActionSpace slicing(agent::ActionSpaceKind::SlicingOnly);
  std::map<std::array<int, kNumSlices>, double> oracle;
  double best = 0.0;
  std::array<int, kNumSlices> best_p{};
  for (const auto& a : slicing.catalog()) {
    sim::Scenario sc = scenario;
    sc.initial_partition = *a.partition;
    bench::RunLogs run{"static", {}};
    for (auto seed : seeds) {
      ric::RicRuntime rt;
      sim::BsState st = sim::make_state(sc, seed);
      run.logs.push_back(rt.run_control_loop(st, duration));
    }
    const double m = bench::summarize(run).median[0];
    oracle[a.partition->prbs_per_slice] = m;
    if (m > best) {
      best = m;
      best_p = a.partition->prbs_per_slice;
    }
  }

  bench::ExperimentConfig cfg;
  cfg.name = "embb-only";
  cfg.action_space = agent::ActionSpaceKind::SlicingOnly;
  cfg.weights_name = "embb-only";
  cfg.weights = {1.0, 0.0, 0.0};
  cfg.training.iterations = 150;
  cfg.training.horizon = 40;
  cfg.seeds = seeds;
  const double cpu0 = cpu_seconds();
  std::vector<agent::CurvePoint> curve;
  auto ck = bench::train_policy(cfg, cfg.action_space, cfg.period_ms, encoder, &curve);
  const double train_cpu = cpu_seconds() - cpu0;
  agent::save_checkpoint(ck, work / "embb_only_checkpoint.json");

  bench::Deployment d{{ck}, {cfg.period_ms}, {"embb-only"}};
  std::size_t steps = 0, good = 0;
  std::map<std::string, int> chosen;
  for (auto seed : seeds) {
    const auto log = bench::evaluate_seed(cfg, d, seed);
    for (const auto& a : log.actions) {
      const auto p = a.action.partition->prbs_per_slice;
      ++steps;
      if (oracle.at(p) >= 0.98 * best) ++good;
      ++chosen[std::to_string(p[0]) + "/" + std::to_string(p[1]) + "/" + std::to_string(p[2])];
    }
  }
  const double frac = steps ? static_cast<double>(good) / static_cast<double>(steps) : 0.0;
  std::string picks;
  for (const auto& [k, n] : chosen) picks += (picks.empty() ? "" : " ") + k + "x" + std::to_string(n);
  return {frac >= 0.9 && train_cpu <= 900.0,
          "oracle best " + std::to_string(best_p[0]) + "/" + std::to_string(best_p[1]) + "/" +
              std::to_string(best_p[2]) + " at " + fmt(best) + " Mbps; " + fmt(100.0 * frac) +
              "% of " + std::to_string(steps) + " steps within 2% (picks " + picks + "); training " +
              fmt(std::round(train_cpu)) + " s CPU"};
}

// ---------------------------------------------------------------- 6

Outcome competition(const fs::path& work) {
  const fs::path cfg_path = fs::path(CONFIG_DIR) / "contention.json";
  const auto matrix = bench::matrix_from_json(bench::load_json(cfg_path), cfg_path.parent_path());
  const auto results = bench::run_matrix(matrix, work / "contention");
  std::vector<bench::ConfigSummary> summaries;
  for (const auto& r : results) summaries.push_back(bench::summarize(bench::to_run_logs(r)));
  const auto ranking = bench::rank_policies(summaries);
  const std::string mmtc_fav = ranking.order[index_of(SliceKind::Mmtc)].front();
  const std::string embb_fav = ranking.order[index_of(SliceKind::Embb)].front();
  if (mmtc_fav == embb_fav)
    return {false, "the same configuration (" + mmtc_fav + ") is best for both slices"};
  auto find = [&](const std::string& n) {
    return *std::find_if(results.begin(), results.end(), [&](const bench::RunResult& r) { return r.name == n; });
  };
  const auto& m = find(mmtc_fav);
  const auto& e = find(embb_fav);
  bool ok = true;
  std::string detail = "mMTC-best " + mmtc_fav + " vs eMBB-best " + embb_fav + ":";
  for (std::size_t i = 0; i < m.logs.size(); ++i) {
    const double mm = bench::log_median(m.logs[i], SliceKind::Mmtc), em = bench::log_median(e.logs[i], SliceKind::Mmtc);
    const double me = bench::log_median(m.logs[i], SliceKind::Embb), ee = bench::log_median(e.logs[i], SliceKind::Embb);
    ok = ok && mm > em && me <= ee;
    detail += " seed " + std::to_string(m.seeds[i]) + " pkts " + fmt(mm) + ">" + fmt(em) + " thr " + fmt(me) +
              "<=" + fmt(ee) + ";";
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- 7, 10

struct MatrixRun {
  bool attempted = false;
  int exit_code = -1;
  double wall_s = 0.0;
  fs::path out;
};

MatrixRun& matrix_run(const fs::path& work) {
  static MatrixRun run;
  if (run.attempted) return run;
  run.attempted = true;
  run.out = work / "paper12";
  fs::remove_all(run.out);
  const std::string cmd = std::string("\"") + XAPPBENCH_PATH + "\" bench-matrix --config \"" + CONFIG_DIR +
                          "/paper12.json\" --out \"" + run.out.string() + "\" > \"" +
                          (work / "paper12.log").string() + "\" 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  run.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

Outcome urllc_emptiness(const fs::path& work) {
  const auto& run = matrix_run(work);
  if (run.exit_code != 0) return {false, "bench-matrix exited with " + std::to_string(run.exit_code)};
  const auto runs = bench::load_runs(run.out);
  std::vector<std::string> nonzero;
  for (const auto& r : runs) {
    const double m = bench::summarize(r).median[index_of(SliceKind::Urllc)];
    if (m != 0.0) nonzero.push_back(r.name + "=" + fmt(m));
    for (const auto& log : r.logs)
      if (bench::log_median(log, SliceKind::Urllc) != 0.0) nonzero.push_back(r.name + " (one seed)");
  }
  std::string detail = std::to_string(runs.size()) + " trained configurations, URLLC median buffer 0 B in all";
  if (!nonzero.empty()) detail = "non-zero URLLC median: " + nonzero.front();
  return {runs.size() == 12 && nonzero.empty(), detail};
}

Outcome matrix_completes(const fs::path& work) {
  const auto& run = matrix_run(work);
  if (run.exit_code != 0) return {false, "bench-matrix exited with " + std::to_string(run.exit_code)};
  std::ifstream in(run.out / "medians.csv");
  std::string line;
  std::getline(in, line);
  bool ok = line == bench::kMediansHeader;
  int rows = 0;
  std::set<std::string> names;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    names.insert(cell);
    if (!fs::exists(run.out / cell / "config.json")) ok = false;
    int numeric = 0;
    while (std::getline(cells, cell, ',')) {
      try {
        if (std::isfinite(std::stod(cell))) ++numeric;
      } catch (const std::exception&) {
      }
    }
    if (numeric != 3) ok = false;
  }
  ok = ok && rows == 12 && names.size() == 12 && run.wall_s <= 4 * 3600.0;
  return {ok, std::to_string(rows) + " configurations x 3 slices populated in " + fmt(std::round(run.wall_s)) +
                  " s wall"};
}

// ---------------------------------------------------------------- 8

ric::XappDescriptor descriptor(const std::string& id, ric::ControlledParameter p, std::int64_t period) {
  ric::XappDescriptor d;
  d.xapp_id = id;
  d.controlled = p;
  d.subscription.xapp_id = id;
  d.subscription.period_ms = period;
  return d;
}

Outcome hierarchical_cadence() {
  bool ok = true;
  std::string detail;
  for (int id = 1; id <= 4; ++id) {
    const auto s = ric::HierarchicalSetup::from_id(id);
    ric::RicRuntime rt;
    rt.subscribe(std::make_shared<ric::RandomXapp>(descriptor("slicing", ric::ControlledParameter::Slicing,
                                                              s.slicing_period_ms),
                                                   agent::ActionSpaceKind::SlicingOnly, 1));
    rt.subscribe(std::make_shared<ric::RandomXapp>(descriptor("scheduling", ric::ControlledParameter::Scheduling,
                                                              s.sched_period_ms),
                                                   agent::ActionSpaceKind::SchedulingOnly, 2));
    sim::BsState st = sim::reset(1);
    rt.run_control_loop(st, 100000);
    const auto c = rt.indication_counts();
    const std::vector<std::uint64_t> expected{static_cast<std::uint64_t>(100000 / s.slicing_period_ms),
                                              static_cast<std::uint64_t>(100000 / s.sched_period_ms)};
    ok = ok && c == expected;
    detail += "setup " + std::to_string(id) + " (" + std::to_string(c[0]) + "," + std::to_string(c[1]) + ") ";
  }
  ric::RicRuntime rt;
  rt.subscribe(std::make_shared<ric::RandomXapp>(descriptor("a", ric::ControlledParameter::Slicing, 1000),
                                                 agent::ActionSpaceKind::SlicingOnly, 1));
  bool conflict = false;
  try {
    rt.subscribe(std::make_shared<ric::RandomXapp>(descriptor("b", ric::ControlledParameter::Slicing, 5000),
                                                   agent::ActionSpaceKind::SlicingOnly, 2));
  } catch (const ConflictError&) {
    conflict = true;
  }
  detail += conflict ? "; overlapping xApps rejected" : "; overlapping xApps accepted";
  return {ok && conflict, detail};
}

// ---------------------------------------------------------------- 9

ric::WireMessage random_message(Rng& rng) {
  auto id = [&] { return "x" + std::to_string(rng.below(100)); };
  switch (rng.below(4)) {
    case 0: {
      ric::SubscribeMsg s;
      s.xapp_id = id();
      s.period_ms = static_cast<std::int64_t>(10 * (1 + rng.below(2000)));
      s.control = std::array{"slicing", "scheduling", "both"}[rng.below(3)];
      return s;
    }
    case 1: {
      ric::IndicationMsg m{id(), rng.below(1ULL << 40), static_cast<std::int64_t>(rng.below(1ULL << 40)), {}};
      for (SliceKind s : kAllSlices) {
        auto& w = m.windows[index_of(s)];
        w.slice = s;
        for (int r = 0; r < kpm::kWindowRows; ++r)
          w.rows[static_cast<std::size_t>(r)] = {s, m.tti - 100 * (9 - r), rng.uniform(0, 20),
                                                 std::floor(rng.uniform(0, 1e6)), rng.uniform(0, 100)};
      }
      return m;
    }
    case 2: {
      ric::ControlMsg c{id(), rng.below(1ULL << 40), {}};
      if (rng.below(2)) c.action.partition = kpm::random_partition(rng);
      if (rng.below(2)) c.action.assignment = kpm::random_assignment(rng);
      return c;
    }
    default: {
      ric::AckMsg a{rng.below(1ULL << 40), rng.below(2) == 0, {}};
      if (!a.ok) a.error = "error \"" + id() + "\"\t\\";
      return a;
    }
  }
}

agent::PolicyCheckpoint demo_checkpoint(agent::ActionSpaceKind kind, std::uint64_t seed) {
  Rng rng(seed);
  agent::PolicyCheckpoint c;
  c.kind = kind;
  c.encoder = kpm::EncoderParams::initial(rng);
  c.encoder.min = {0, 0, 0};
  c.encoder.max = {10, 20000, 20};
  c.params = agent::PolicyParams::initial(agent::ActionSpace(kind).size(), rng);
  for (auto& l : c.params.actor.layers()) l.weight *= 30.0;
  return c;
}

Outcome protocol_round_trip() {
  Rng rng(909);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto m = random_message(rng);
    const std::string line = ric::serialize(m);
    if (!(ric::parse_message(line) == m) || ric::serialize(ric::parse_message(line)) != line) ++mismatches;
  }

  // Single joint xApp, then a hierarchical pair, each over 60 s.
  bool identical = true;
  std::size_t actions = 0;
  for (int variant = 0; variant < 2; ++variant) {
    auto make = [&] {
      std::vector<std::unique_ptr<ric::PolicyXapp>> xs;
      if (variant == 0) {
        xs.push_back(ric::PolicyXapp::from_checkpoint("joint", demo_checkpoint(agent::ActionSpaceKind::Joint, 4)));
      } else {
        xs.push_back(ric::PolicyXapp::from_checkpoint(
            "slicing", demo_checkpoint(agent::ActionSpaceKind::SlicingOnly, 5), 1000));
        xs.push_back(ric::PolicyXapp::from_checkpoint(
            "scheduling", demo_checkpoint(agent::ActionSpaceKind::SchedulingOnly, 6), 10000));
      }
      return xs;
    };
    ric::SessionConfig cfg;
    cfg.seed = 42;
    cfg.duration_tti = 60000;
    cfg.expected_subscriptions = variant == 0 ? 1 : 2;
    ric::WireClient client;
    for (auto& x : make()) client.add(std::move(x));
    ric::LoopbackTransport transport(client);
    const auto wire = ric::serve_wire(cfg, transport);

    ric::RicRuntime rt(cfg.runtime);
    for (auto& x : make()) rt.subscribe(std::move(x));
    sim::BsState st = sim::make_state(cfg.scenario, cfg.seed);
    const auto local = rt.run_control_loop(st, cfg.duration_tti);
    std::ostringstream wa, la;
    sim::write_action_csv(wa, wire.log);
    sim::write_action_csv(la, local);
    identical = identical && sim::metric_csv(wire.log) == sim::metric_csv(local) && wa.str() == la.str() &&
                wire.rejected_messages == 0;
    actions += local.actions.size();
  }
  return {mismatches == 0 && identical,
          std::to_string(10000 - mismatches) + "/10000 messages round-trip; wire vs in-process logs " +
              (identical ? "byte-identical" : "differ") + " (" + std::to_string(actions) + " actions)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string work = "acceptance_runs";
  std::vector<int> only;
  app.add_option("--work-dir", work, "Scratch directory for run artifacts");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);
  const fs::path dir(work);
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"weight arithmetic", weight_arithmetic},
      {"return and GAE oracles", return_oracles},
      {"gradient checks", gradient_checks},
      {"simulator invariants (fuzzed)", simulator_invariants},
      {"learning sanity vs exhaustive oracle", [&] { return learning_sanity(dir); }},
      {"slice competition direction", [&] { return competition(dir); }},
      {"URLLC emptiness", [&] { return urllc_emptiness(dir); }},
      {"hierarchical cadence", hierarchical_cadence},
      {"protocol round trip", protocol_round_trip},
      {"12-xApp matrix completes", [&] { return matrix_completes(dir); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << n << ". " << criteria[i].first << ": " << o.detail << " ("
              << fmt(std::round(secs * 10) / 10) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
