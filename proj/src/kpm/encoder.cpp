#include "oran/kpm/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "oran/errors.hpp"

namespace oran::kpm {

namespace {

std::vector<int> decoder_widths() {
  auto w = EncoderParams::layer_widths();
  std::reverse(w.begin(), w.end());
  return w;
}

Eigen::MatrixXd batch_matrix(std::span<const KpmWindow> data, const EncoderParams& params) {
  Eigen::MatrixXd x(kEncoderInput, static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) x.col(static_cast<Eigen::Index>(i)) = encoder_input(data[i], params);
  return x;
}

}  // namespace

EncoderParams EncoderParams::initial(Rng& rng) {
  EncoderParams p;
  p.network = nn::Mlp(layer_widths(), nn::Activation::Relu, nn::Activation::Identity, rng);
  p.min.fill(0.0);
  p.max.fill(1.0);
  return p;
}

NormalizedWindow normalize(const KpmWindow& window, const EncoderParams& params) {
  for (int c = 0; c < kMetrics; ++c)
    if (!(params.max[c] > params.min[c]))
      throw DegenerateRange("metric column " + std::to_string(c) + " has max <= min");
  NormalizedWindow out{};
  for (int r = 0; r < kWindowRows; ++r)
    for (int c = 0; c < kMetrics; ++c)
      out[r][c] = std::clamp((window.at(r, c) - params.min[c]) / (params.max[c] - params.min[c]), 0.0, 1.0);
  return out;
}

Eigen::VectorXd encoder_input(const KpmWindow& window, const EncoderParams& params) {
  const auto norm = normalize(window, params);
  Eigen::VectorXd x(kEncoderInput);
  for (int r = 0; r < kWindowRows; ++r)
    for (int c = 0; c < kMetrics; ++c) x(r * kMetrics + c) = norm[r][c];
  return x;
}

Encoding encode(const KpmWindow& window, const EncoderParams& params) {
  const Eigen::MatrixXd z = params.network.forward(encoder_input(window, params));
  if (z.rows() != kLatentWidth) throw FormatError("encoder output width is not 3");
  return {z(0, 0), z(1, 0), z(2, 0)};
}

std::array<double, kNumSlices * kLatentWidth> encode_state(const SliceWindows& windows,
                                                           const EncoderParams& params) {
  std::array<double, kNumSlices * kLatentWidth> state{};
  for (int s = 0; s < kNumSlices; ++s) {
    const auto e = encode(windows[s], params);
    std::copy(e.begin(), e.end(), state.begin() + s * kLatentWidth);
  }
  return state;
}

ReconstructionLoss reconstruction_loss(const nn::Mlp& encoder, const nn::Mlp& decoder,
                                       const Eigen::MatrixXd& batch, bool with_gradient) {
  ReconstructionLoss out;
  nn::Mlp::Tape enc_tape, dec_tape;
  const Eigen::MatrixXd z = encoder.forward(batch, enc_tape);
  const Eigen::MatrixXd y = decoder.forward(z, dec_tape);
  const Eigen::MatrixXd diff = y - batch;
  const double n = static_cast<double>(diff.size());
  out.mse = diff.squaredNorm() / n;
  if (!with_gradient) return out;

  const Eigen::MatrixXd dy = (2.0 / n) * diff;
  Eigen::MatrixXd dz;
  out.decoder_grad = decoder.backward(dec_tape, dy, &dz);
  out.encoder_grad = encoder.backward(enc_tape, dz);
  return out;
}

std::pair<std::array<double, kMetrics>, std::array<double, kMetrics>> metric_ranges(
    std::span<const KpmWindow> dataset) {
  std::array<double, kMetrics> lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& w : dataset)
    for (int r = 0; r < kWindowRows; ++r)
      for (int c = 0; c < kMetrics; ++c) {
        lo[c] = std::min(lo[c], w.at(r, c));
        hi[c] = std::max(hi[c], w.at(r, c));
      }
  for (int c = 0; c < kMetrics; ++c)
    if (!(hi[c] > lo[c])) hi[c] = lo[c] + 1.0;
  return {lo, hi};
}

AutoencoderFit train_autoencoder(std::span<const KpmWindow> dataset, const AutoencoderConfig& config) {
  if (dataset.empty()) throw EmptyDataset("autoencoder training needs at least one window");
  Rng rng(config.seed);
  AutoencoderFit fit;
  fit.encoder = EncoderParams::initial(rng);
  fit.decoder = nn::Mlp(decoder_widths(), nn::Activation::Relu, nn::Activation::Identity, rng);
  std::tie(fit.encoder.min, fit.encoder.max) = metric_ranges(dataset);

  const Eigen::MatrixXd data = batch_matrix(dataset, fit.encoder);
  fit.initial_mse = reconstruction_loss(fit.encoder.network, fit.decoder, data, false).mse;

  nn::Adam enc_opt(fit.encoder.network), dec_opt(fit.decoder);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.cols()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto batch = static_cast<std::size_t>(std::max(1, config.batch_size));

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t len = std::min(batch, order.size() - start);
      Eigen::MatrixXd mb(kEncoderInput, static_cast<Eigen::Index>(len));
      for (std::size_t k = 0; k < len; ++k) mb.col(static_cast<Eigen::Index>(k)) = data.col(order[start + k]);
      const auto loss = reconstruction_loss(fit.encoder.network, fit.decoder, mb, true);
      enc_opt.step(fit.encoder.network, loss.encoder_grad, config.lr);
      dec_opt.step(fit.decoder, loss.decoder_grad, config.lr);
    }
    fit.epoch_mse.push_back(reconstruction_loss(fit.encoder.network, fit.decoder, data, false).mse);
  }
  fit.final_mse = fit.epoch_mse.empty() ? fit.initial_mse : fit.epoch_mse.back();
  return fit;
}

nlohmann::json to_json(const EncoderParams& params) {
  return {{"format", kEncoderFormat},
          {"version", kEncoderFormatVersion},
          {"input", {{"rows", kWindowRows}, {"metrics", {"dl_throughput_mbps", "buffer_bytes", "tx_packets"}}}},
          {"normalization", {{"min", params.min}, {"max", params.max}}},
          {"network", nn::to_json(params.network)}};
}

EncoderParams encoder_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kEncoderFormat) throw FormatError("not an encoder file");
    if (j.at("version").get<int>() != kEncoderFormatVersion)
      throw FormatError("unsupported encoder version " + j.at("version").dump());
    EncoderParams p;
    p.min = j.at("normalization").at("min").get<std::array<double, kMetrics>>();
    p.max = j.at("normalization").at("max").get<std::array<double, kMetrics>>();
    p.network = nn::mlp_from_json(j.at("network"));
    if (p.network.widths() != EncoderParams::layer_widths())
      throw FormatError("encoder layer widths must be 30,256,128,32,3");
    if (!p.network.all_finite()) throw FormatError("encoder has non-finite parameters");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("encoder: ") + e.what());
  }
}

void save_encoder(const EncoderParams& params, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << to_json(params).dump() << '\n';
}

EncoderParams load_encoder(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return encoder_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace oran::kpm
