#include "oran/nn/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oran/errors.hpp"

namespace oran::nn {

namespace {

void activate(Eigen::MatrixXd& z, Activation a) {
  switch (a) {
    case Activation::Identity: break;
    case Activation::Relu: z = z.cwiseMax(0.0); break;
    case Activation::Tanh: z = z.array().tanh().matrix(); break;
  }
}

// Derivative expressed through the activation output y.
void times_derivative(Eigen::MatrixXd& grad, const Eigen::MatrixXd& y, Activation a) {
  switch (a) {
    case Activation::Identity: break;
    case Activation::Relu: grad = (y.array() > 0.0).select(grad, 0.0); break;
    case Activation::Tanh: grad.array() *= (1.0 - y.array().square()); break;
  }
}

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::Relu: return "relu";
    case Activation::Tanh: return "tanh";
  }
  return "?";
}

Activation activation_from(const std::string& s) {
  if (s == "identity") return Activation::Identity;
  if (s == "relu") return Activation::Relu;
  if (s == "tanh") return Activation::Tanh;
  throw FormatError("unknown activation '" + s + "'");
}

}  // namespace

MlpGradient& MlpGradient::operator+=(const MlpGradient& other) {
  for (std::size_t i = 0; i < weight.size(); ++i) {
    weight[i] += other.weight[i];
    bias[i] += other.bias[i];
  }
  return *this;
}

void MlpGradient::scale(double factor) {
  for (auto& w : weight) w *= factor;
  for (auto& b : bias) b *= factor;
}

double MlpGradient::squared_norm() const {
  double s = 0.0;
  for (const auto& w : weight) s += w.squaredNorm();
  for (const auto& b : bias) s += b.squaredNorm();
  return s;
}

Mlp::Mlp(const std::vector<int>& widths, Activation hidden, Activation output, Rng& rng,
         double output_scale) {
  if (widths.size() < 2) throw std::invalid_argument("Mlp needs at least input and output widths");
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const int in = widths[l], out = widths[l + 1];
    const bool last = l + 2 == widths.size();
    const double bound = std::sqrt(1.0 / in) * (last ? output_scale : 1.0);
    DenseLayer layer;
    layer.weight.resize(out, in);
    layer.bias.resize(out);
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) layer.weight(r, c) = rng.uniform(-bound, bound);
    for (int r = 0; r < out; ++r) layer.bias(r) = rng.uniform(-bound, bound);
    layer.activation = last ? output : hidden;
    layers_.push_back(std::move(layer));
  }
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd h = x;
  for (const auto& layer : layers_) {
    Eigen::MatrixXd z = layer.weight * h;
    z.colwise() += layer.bias;
    activate(z, layer.activation);
    h = std::move(z);
  }
  return h;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Tape& tape) const {
  tape.inputs.clear();
  tape.outputs.clear();
  Eigen::MatrixXd h = x;
  for (const auto& layer : layers_) {
    tape.inputs.push_back(h);
    Eigen::MatrixXd z = layer.weight * h;
    z.colwise() += layer.bias;
    activate(z, layer.activation);
    tape.outputs.push_back(z);
    h = std::move(z);
  }
  return h;
}

MlpGradient Mlp::backward(const Tape& tape, const Eigen::MatrixXd& grad_output,
                          Eigen::MatrixXd* grad_input) const {
  MlpGradient g = zero_gradient();
  Eigen::MatrixXd grad = grad_output;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const auto& layer = layers_[l];
    times_derivative(grad, tape.outputs[l], layer.activation);
    g.weight[l] = grad * tape.inputs[l].transpose();
    g.bias[l] = grad.rowwise().sum();
    if (l > 0 || grad_input) grad = layer.weight.transpose() * grad;
  }
  if (grad_input) *grad_input = std::move(grad);
  return g;
}

MlpGradient Mlp::zero_gradient() const {
  MlpGradient g;
  for (const auto& layer : layers_) {
    g.weight.push_back(Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return g;
}

int Mlp::input_width() const { return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols()); }
int Mlp::output_width() const { return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows()); }

std::vector<int> Mlp::widths() const {
  std::vector<int> w;
  if (layers_.empty()) return w;
  w.push_back(input_width());
  for (const auto& layer : layers_) w.push_back(static_cast<int>(layer.weight.rows()));
  return w;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

std::vector<double> Mlp::flatten() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const auto& layer : layers_) {
    flat.insert(flat.end(), layer.weight.data(), layer.weight.data() + layer.weight.size());
    flat.insert(flat.end(), layer.bias.data(), layer.bias.data() + layer.bias.size());
  }
  return flat;
}

void Mlp::assign(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw std::invalid_argument("Mlp::assign: size mismatch");
  std::size_t k = 0;
  for (auto& layer : layers_) {
    std::copy_n(flat.data() + k, layer.weight.size(), layer.weight.data());
    k += layer.weight.size();
    std::copy_n(flat.data() + k, layer.bias.size(), layer.bias.data());
    k += layer.bias.size();
  }
}

std::vector<double> Mlp::flatten(const MlpGradient& g) {
  std::vector<double> flat;
  for (std::size_t l = 0; l < g.weight.size(); ++l) {
    flat.insert(flat.end(), g.weight[l].data(), g.weight[l].data() + g.weight[l].size());
    flat.insert(flat.end(), g.bias[l].data(), g.bias[l].data() + g.bias[l].size());
  }
  return flat;
}

bool Mlp::all_finite() const {
  for (const auto& layer : layers_)
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
  return true;
}

bool Mlp::operator==(const Mlp& other) const {
  if (layers_.size() != other.layers_.size()) return false;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& a = layers_[l];
    const auto& b = other.layers_[l];
    if (a.activation != b.activation || a.weight.rows() != b.weight.rows() ||
        a.weight.cols() != b.weight.cols() || a.weight != b.weight || a.bias != b.bias)
      return false;
  }
  return true;
}

Adam::Adam(const Mlp& net, double beta1, double beta2, double eps)
    : m_(net.zero_gradient()), v_(net.zero_gradient()), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void Adam::step(Mlp& net, const MlpGradient& grad, double lr) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  };
  auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].weight, m_.weight[l], v_.weight[l], grad.weight[l]);
    update(layers[l].bias, m_.bias[l], v_.bias[l], grad.bias[l]);
  }
}

nlohmann::json to_json(const Mlp& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    std::vector<double> w(layer.weight.size());
    // stored row-major: w[r * in + c]
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c)
        w[static_cast<std::size_t>(r * layer.weight.cols() + c)] = layer.weight(r, c);
    layers.push_back({{"in", layer.weight.cols()},
                      {"out", layer.weight.rows()},
                      {"activation", activation_name(layer.activation)},
                      {"weight", w},
                      {"bias", std::vector<double>(layer.bias.data(), layer.bias.data() + layer.bias.size())}});
  }
  return {{"layers", layers}};
}

Mlp mlp_from_json(const nlohmann::json& j) {
  Mlp net;
  try {
    int prev_out = -1;
    for (const auto& lj : j.at("layers")) {
      const int in = lj.at("in").get<int>();
      const int out = lj.at("out").get<int>();
      if (in <= 0 || out <= 0) throw FormatError("layer widths must be positive");
      if (prev_out >= 0 && prev_out != in) throw FormatError("layer widths do not chain");
      prev_out = out;
      const auto w = lj.at("weight").get<std::vector<double>>();
      const auto b = lj.at("bias").get<std::vector<double>>();
      if (w.size() != static_cast<std::size_t>(in) * out || b.size() != static_cast<std::size_t>(out))
        throw FormatError("layer parameter count does not match its shape");
      DenseLayer layer;
      layer.activation = activation_from(lj.at("activation").get<std::string>());
      layer.weight.resize(out, in);
      for (int r = 0; r < out; ++r)
        for (int c = 0; c < in; ++c) layer.weight(r, c) = w[static_cast<std::size_t>(r) * in + c];
      layer.bias = Eigen::Map<const Eigen::VectorXd>(b.data(), out);
      net.layers().push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("network: ") + e.what());
  }
  return net;
}

}  // namespace oran::nn
