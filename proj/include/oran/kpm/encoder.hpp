#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "oran/kpm/window.hpp"
#include "oran/nn/mlp.hpp"

namespace oran::kpm {

inline constexpr int kLatentWidth = 3;

/// Encoder half of the KPM autoencoder plus the per-metric min/max used to
/// scale its input.
struct EncoderParams {
  nn::Mlp network;  // 30 -> 256 -> 128 -> 32 -> 3, ReLU hidden, linear output
  std::array<double, kMetrics> min{};
  std::array<double, kMetrics> max{};

  /// Freshly initialised encoder with the unit range [0, 1] per metric.
  static EncoderParams initial(Rng& rng);
  static std::vector<int> layer_widths() { return {kEncoderInput, 256, 128, 32, kLatentWidth}; }

  bool operator==(const EncoderParams&) const = default;
};

using NormalizedWindow = std::array<std::array<double, kMetrics>, kWindowRows>;
using Encoding = std::array<double, kLatentWidth>;

/// x' = clamp((x - min) / (max - min), 0, 1) per column. Throws
/// DegenerateRange when any max <= min.
NormalizedWindow normalize(const KpmWindow& window, const EncoderParams& params);

/// Row-major flattening of the normalised window into the encoder input.
Eigen::VectorXd encoder_input(const KpmWindow& window, const EncoderParams& params);

Encoding encode(const KpmWindow& window, const EncoderParams& params);

/// The three per-slice encodings concatenated (eMBB, mMTC, URLLC): the agent state.
std::array<double, kNumSlices * kLatentWidth> encode_state(const SliceWindows& windows,
                                                           const EncoderParams& params);

struct AutoencoderConfig {
  int epochs = 30;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  int batch_size = 32;
};

struct AutoencoderFit {
  EncoderParams encoder;
  nn::Mlp decoder;  // 3 -> 32 -> 128 -> 256 -> 30
  double initial_mse = 0.0;
  double final_mse = 0.0;
  std::vector<double> epoch_mse;
};

/// Mean squared reconstruction error over every element of the batch
/// (columns are normalised, flattened windows) and, when requested, its
/// gradient for both halves.
struct ReconstructionLoss {
  double mse = 0.0;
  nn::MlpGradient encoder_grad;
  nn::MlpGradient decoder_grad;
};
ReconstructionLoss reconstruction_loss(const nn::Mlp& encoder, const nn::Mlp& decoder,
                                       const Eigen::MatrixXd& batch, bool with_gradient);

/// Per-metric min/max over every row of every window. A constant column
/// gets max = min + 1 so that it maps to 0 instead of being rejected.
std::pair<std::array<double, kMetrics>, std::array<double, kMetrics>> metric_ranges(
    std::span<const KpmWindow> dataset);

/// Fits encoder + mirrored decoder by Adam on the mean squared error.
/// Throws EmptyDataset.
AutoencoderFit train_autoencoder(std::span<const KpmWindow> dataset, const AutoencoderConfig& config);

inline constexpr const char* kEncoderFormat = "oran-kpm-encoder";
inline constexpr int kEncoderFormatVersion = 1;

nlohmann::json to_json(const EncoderParams& params);
/// Throws FormatError on a wrong format tag, version or shape.
EncoderParams encoder_from_json(const nlohmann::json& j);
void save_encoder(const EncoderParams& params, const std::filesystem::path& path);
EncoderParams load_encoder(const std::filesystem::path& path);

}  // namespace oran::kpm
