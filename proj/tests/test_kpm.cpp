#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "oran/errors.hpp"
#include "oran/kpm/encoder.hpp"
#include "oran/kpm/sampler.hpp"
#include "oran/kpm/trace.hpp"
#include "oran/sim/scenario.hpp"

using namespace oran;
using namespace oran::kpm;

namespace {

KpmSample sample(std::int64_t tti, double thr = 1.0, double buf = 2.0, double pkt = 3.0,
                 SliceKind s = SliceKind::Embb) {
  return {s, tti, thr, buf, pkt};
}

KpmWindow window_from(std::function<double(int, int)> f, SliceKind s = SliceKind::Embb) {
  KpmWindow w;
  w.slice = s;
  for (int r = 0; r < kWindowRows; ++r)
    w.rows[static_cast<std::size_t>(r)] = {s, r + 1, f(r, 0), f(r, 1), f(r, 2)};
  return w;
}

EncoderParams zero_bias_encoder(std::uint64_t seed) {
  Rng rng(seed);
  auto p = EncoderParams::initial(rng);
  for (auto& layer : p.network.layers()) layer.bias.setZero();
  p.min = {0.0, 0.0, 0.0};
  p.max = {13.88, 1e5, 100.0};
  return p;
}

}  // namespace

TEST_CASE("tumbling windows") {
  KpmStream s(SliceKind::Embb);
  int emitted = 0;
  for (int i = 1; i <= 9; ++i) CHECK_FALSE(s.push_sample(sample(i)).has_value());
  const auto w = s.push_sample(sample(10, 4.0));
  REQUIRE(w.has_value());
  CHECK(w->rows.front().tti == 1);
  CHECK(w->rows.back().tti == 10);
  CHECK(w->at(9, 0) == 4.0);
  ++emitted;
  for (int i = 11; i <= 20; ++i)
    if (s.push_sample(sample(i))) ++emitted;
  CHECK(emitted == 2);
  CHECK(s.emitted() == 2);
  CHECK(s.pending() == 0);
}

TEST_CASE("window count is floor(samples / 10)") {
  for (int n : {0, 9, 10, 11, 29, 30, 157}) {
    KpmStream s(SliceKind::Mmtc);
    int windows = 0;
    for (int i = 1; i <= n; ++i)
      if (s.push_sample(sample(i, 1, 1, 1, SliceKind::Mmtc))) ++windows;
    CHECK(windows == n / 10);
  }
}

TEST_CASE("stream rejects out-of-order, foreign-slice and negative samples") {
  KpmStream s(SliceKind::Embb);
  s.push_sample(sample(5));
  CHECK_THROWS_AS(s.push_sample(sample(5)), OutOfOrderSample);
  CHECK_THROWS_AS(s.push_sample(sample(4)), OutOfOrderSample);
  CHECK_THROWS_AS(s.push_sample(sample(6, 1, 1, 1, SliceKind::Urllc)), OutOfOrderSample);
  CHECK_THROWS_AS(s.push_sample(sample(7, -1.0)), std::invalid_argument);
  CHECK(s.pending() == 1);
}

TEST_CASE("normalize") {
  auto p = zero_bias_encoder(1);
  const auto w = window_from([](int r, int c) {
    if (c == 0) return r == 0 ? 13.88 : (r == 1 ? 0.0 : 20.0);
    return c == 1 ? -5.0 : 50.0;
  });
  const auto n = normalize(w, p);
  CHECK(n[0][0] == 1.0);
  CHECK(n[1][0] == 0.0);
  CHECK(n[2][0] == 1.0);
  CHECK(n[0][1] == 0.0);
  CHECK(n[0][2] == doctest::Approx(0.5));

  p.max[1] = p.min[1];
  CHECK_THROWS_AS(normalize(w, p), DegenerateRange);
}

TEST_CASE("normalization is monotone per column") {
  const auto p = zero_bias_encoder(1);
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = rng.uniform(-5, 20), b = rng.uniform(-5, 20);
    const auto wa = window_from([&](int, int) { return a; });
    const auto wb = window_from([&](int, int) { return b; });
    const auto na = normalize(wa, p), nb = normalize(wb, p);
    if (a <= b) CHECK(na[0][0] <= nb[0][0]);
    else CHECK(na[0][0] >= nb[0][0]);
  }
}

TEST_CASE("encode: zero window with zero biases is zero, and is deterministic") {
  const auto p = zero_bias_encoder(3);
  const auto zero = window_from([](int, int) { return 0.0; });
  CHECK(encode(zero, p) == Encoding{0.0, 0.0, 0.0});

  const auto w = window_from([](int r, int c) { return 0.5 * r + c; });
  const auto a = encode(w, p);
  const auto b = encode(w, p);
  CHECK(a == b);
  CHECK(a.size() == 3);
  for (double v : a) CHECK(std::isfinite(v));
  CHECK(EncoderParams::layer_widths() == std::vector<int>{30, 256, 128, 32, 3});
  CHECK(p.network.widths() == EncoderParams::layer_widths());
}

TEST_CASE("encode_state concatenates slices in order") {
  const auto p = zero_bias_encoder(4);
  SliceWindows ws{};
  for (SliceKind s : kAllSlices)
    ws[index_of(s)] = window_from([&](int r, int c) { return (1 + index_of(s)) * (r + c + 1.0); }, s);
  const auto st = encode_state(ws, p);
  for (SliceKind s : kAllSlices) {
    const auto e = encode(ws[index_of(s)], p);
    for (int i = 0; i < 3; ++i) CHECK(st[index_of(s) * 3 + static_cast<std::size_t>(i)] == e[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("reconstruction loss gradient matches central differences") {
  Rng rng(11);
  nn::Mlp enc(EncoderParams::layer_widths(), nn::Activation::Relu, nn::Activation::Identity, rng);
  nn::Mlp dec({3, 32, 128, 256, 30}, nn::Activation::Relu, nn::Activation::Identity, rng);
  Eigen::MatrixXd batch(30, 4);
  for (int i = 0; i < batch.size(); ++i) batch.data()[i] = rng.uniform();

  const auto loss = reconstruction_loss(enc, dec, batch, true);
  const auto ge = nn::Mlp::flatten(loss.encoder_grad);
  const auto gd = nn::Mlp::flatten(loss.decoder_grad);

  auto check_net = [&](nn::Mlp& net, const std::vector<double>& analytic, bool is_encoder) {
    auto flat = net.flatten();
    double num = 0.0, den = 0.0;
    const double h = 1e-6;
    for (int k = 0; k < 300; ++k) {
      const auto idx = static_cast<std::size_t>(rng.below(flat.size()));
      const double orig = flat[idx];
      flat[idx] = orig + h;
      net.assign(flat);
      const double up = is_encoder ? reconstruction_loss(net, dec, batch, false).mse
                                   : reconstruction_loss(enc, net, batch, false).mse;
      flat[idx] = orig - h;
      net.assign(flat);
      const double down = is_encoder ? reconstruction_loss(net, dec, batch, false).mse
                                     : reconstruction_loss(enc, net, batch, false).mse;
      flat[idx] = orig;
      net.assign(flat);
      const double fd = (up - down) / (2 * h);
      num += (fd - analytic[idx]) * (fd - analytic[idx]);
      den += analytic[idx] * analytic[idx];
    }
    return std::sqrt(num / den);
  };
  CHECK(check_net(enc, ge, true) <= 1e-4);
  CHECK(check_net(dec, gd, false) <= 1e-4);
}

TEST_CASE("autoencoder training") {
  SUBCASE("identical windows are learned almost exactly") {
    const auto w = window_from([](int r, int c) { return r * (c + 1.0) + c; });
    std::vector<KpmWindow> data(64, w);
    AutoencoderConfig cfg;
    cfg.epochs = 200;
    const auto fit = train_autoencoder(data, cfg);
    CHECK(fit.final_mse < 1e-3 * fit.initial_mse);
  }
  SUBCASE("rank-1 windows fit through the three-wide bottleneck") {
    Rng rng(5);
    std::vector<KpmWindow> data;
    for (int i = 0; i < 256; ++i) {
      const double s = rng.uniform(0.1, 2.0);
      data.push_back(window_from([&](int r, int c) { return s * (1.0 + r) * (1.0 + 2.0 * c); }));
    }
    AutoencoderConfig cfg;
    cfg.epochs = 60;
    const auto fit = train_autoencoder(data, cfg);
    CHECK(fit.final_mse < 0.1 * fit.initial_mse);
    CHECK(fit.encoder.network.all_finite());
  }
  SUBCASE("fixed seed reproduces parameters; lr 0 leaves them at their initial values") {
    std::vector<KpmWindow> data;
    for (int i = 0; i < 20; ++i) data.push_back(window_from([&](int r, int c) { return i + r * 0.1 + c; }));
    AutoencoderConfig cfg;
    cfg.epochs = 3;
    CHECK(train_autoencoder(data, cfg).encoder == train_autoencoder(data, cfg).encoder);

    cfg.lr = 0.0;
    const auto fit = train_autoencoder(data, cfg);
    Rng rng(cfg.seed);
    const auto init = EncoderParams::initial(rng);
    CHECK(fit.encoder.network == init.network);
    CHECK(fit.initial_mse == doctest::Approx(fit.final_mse));
  }
  SUBCASE("empty dataset") {
    CHECK_THROWS_AS(train_autoencoder({}, AutoencoderConfig{}), EmptyDataset);
  }
}

TEST_CASE("metric ranges come from the dataset and map it onto [0,1]") {
  std::vector<KpmWindow> data{window_from([](int r, int c) { return r + c; }),
                              window_from([](int r, int c) { return 2.0 * r - c; })};
  const auto [lo, hi] = metric_ranges(data);
  CHECK(lo[0] == 0.0);
  CHECK(hi[0] == 18.0);
  CHECK(lo[1] == -1.0);
  CHECK(hi[1] == 17.0);
  const auto constant = metric_ranges(std::vector<KpmWindow>{window_from([](int, int) { return 7.0; })});
  CHECK(constant.second[2] == constant.first[2] + 1.0);
}

TEST_CASE("encoder file round trip") {
  auto p = zero_bias_encoder(8);
  const auto path = std::filesystem::temp_directory_path() / "oran_encoder_test.json";
  save_encoder(p, path);
  CHECK(load_encoder(path) == p);
  std::filesystem::remove(path);

  auto j = to_json(p);
  j["version"] = 99;
  CHECK_THROWS_AS(encoder_from_json(j), FormatError);
  j = to_json(p);
  j["format"] = "something-else";
  CHECK_THROWS_AS(encoder_from_json(j), FormatError);
}

TEST_CASE("trace ingestion") {
  SUBCASE("30 rows of one slice give 3 windows") {
    std::ostringstream csv;
    csv << kTraceHeader << "\n";
    for (int i = 1; i <= 30; ++i) csv << i * 100 << ",eMBB," << i * 0.1 << ",10,2\n";
    std::istringstream in(csv.str());
    const auto ws = ingest_trace(in);
    CHECK(ws.size() == 3);
    CHECK(ws[2].rows.back().tti == 3000);
  }
  SUBCASE("empty input") {
    std::istringstream in("");
    CHECK(ingest_trace(in).empty());
  }
  SUBCASE("interleaved slices are windowed per slice") {
    std::ostringstream csv;
    csv << kTraceHeader << "\n";
    for (int i = 1; i <= 20; ++i) csv << i << ",eMBB,1,1,1\n" << i << ",URLLC,1,1,1\n";
    std::istringstream in(csv.str());
    CHECK(ingest_trace(in).size() == 4);
  }
  SUBCASE("negative throughput is a parse error with its line number") {
    std::istringstream in(std::string(kTraceHeader) + "\n1,eMBB,1,1,1\n2,eMBB,-3,1,1\n");
    try {
      ingest_trace(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-numeric field") {
    std::istringstream in(std::string(kTraceHeader) + "\n1,eMBB,abc,1,1\n");
    CHECK_THROWS_AS(ingest_trace(in), ParseError);
  }
  SUBCASE("missing column") {
    std::istringstream in("tti,slice,dl_throughput_mbps,buffer_bytes\n1,eMBB,1,1\n");
    CHECK_THROWS_AS(ingest_trace(in), MissingColumn);
  }
}

TEST_CASE("periodic sampler emits one full window per period for every slice") {
  CHECK_THROWS_AS(validate_period(0), InvalidPeriod);
  CHECK_THROWS_AS(validate_period(15), InvalidPeriod);
  CHECK_NOTHROW(validate_period(1000));

  sim::BsState st = sim::reset(2);
  PeriodicSampler sampler(1000, st);
  CHECK(sampler.sample_interval() == 100);
  int emissions = 0;
  for (int t = 1; t <= 5000; ++t) {
    sim::step(st);
    if (auto ws = sampler.on_tti(st)) {
      ++emissions;
      CHECK(st.tti % 1000 == 0);
      for (SliceKind s : kAllSlices) {
        const auto& w = (*ws)[index_of(s)];
        CHECK(w.slice == s);
        CHECK(w.rows.back().tti == st.tti);
        CHECK(w.rows.front().tti == st.tti - 900);
      }
    }
  }
  CHECK(emissions == 5);
}

TEST_CASE("collected training windows are reproducible") {
  const std::vector<std::int64_t> periods{1000};
  const auto a = collect_windows(sim::Scenario::standard(), periods, 20000, 3);
  const auto b = collect_windows(sim::Scenario::standard(), periods, 20000, 3);
  CHECK(a.size() == 60);
  CHECK(a == b);
}
