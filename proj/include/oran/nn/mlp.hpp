#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "oran/rng.hpp"

namespace oran::nn {

enum class Activation : std::uint8_t { Identity, Relu, Tanh };

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
  Activation activation = Activation::Identity;
};

/// Gradient with the same shapes as the network it belongs to.
struct MlpGradient {
  std::vector<Eigen::MatrixXd> weight;
  std::vector<Eigen::VectorXd> bias;

  MlpGradient& operator+=(const MlpGradient& other);
  void scale(double factor);
  double squared_norm() const;
};

/// Fully connected feed-forward network. Batches are column-major: one
/// sample per column.
class Mlp {
 public:
  /// Per-layer inputs and post-activation outputs kept for backward().
  struct Tape {
    std::vector<Eigen::MatrixXd> inputs;
    std::vector<Eigen::MatrixXd> outputs;
  };

  Mlp() = default;
  /// widths = {input, hidden..., output}. Weights and biases are drawn
  /// uniformly from +-sqrt(1/fan_in); the last layer is further multiplied
  /// by output_scale.
  Mlp(const std::vector<int>& widths, Activation hidden, Activation output, Rng& rng,
      double output_scale = 1.0);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Tape& tape) const;
  /// grad_output is dLoss/dOutput for the batch recorded on the tape.
  /// grad_input, when given, receives dLoss/dInput.
  MlpGradient backward(const Tape& tape, const Eigen::MatrixXd& grad_output,
                       Eigen::MatrixXd* grad_input = nullptr) const;
  MlpGradient zero_gradient() const;

  int input_width() const;
  int output_width() const;
  std::vector<int> widths() const;
  std::size_t parameter_count() const;

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  /// Flat parameter view, layer by layer: weights (column-major) then bias.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);
  static std::vector<double> flatten(const MlpGradient& g);

  bool all_finite() const;
  bool operator==(const Mlp& other) const;

 private:
  std::vector<DenseLayer> layers_;
};

/// Adam state for one network.
class Adam {
 public:
  Adam() = default;
  explicit Adam(const Mlp& net, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  void step(Mlp& net, const MlpGradient& grad, double lr);
  std::int64_t steps() const { return t_; }

 private:
  MlpGradient m_, v_;
  double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::int64_t t_ = 0;
};

nlohmann::json to_json(const Mlp& net);
Mlp mlp_from_json(const nlohmann::json& j);

}  // namespace oran::nn
