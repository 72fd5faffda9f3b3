#include "pairnet/pair_block.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pairnet/error.hpp"

namespace pairnet {

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Metric: return "metric";
    case BlockKind::Perceptron: return "perceptron";
    case BlockKind::SigmoidNet: return "sigmoid";
  }
  return "unknown";
}

BlockKind block_kind_from_string(std::string_view s) {
  if (s == "metric") return BlockKind::Metric;
  if (s == "perceptron") return BlockKind::Perceptron;
  if (s == "sigmoid") return BlockKind::SigmoidNet;
  throw Error(ErrorKind::Config, "unknown block kind '" + std::string(s) + "'");
}

TrainConfig TrainConfig::perceptron_defaults() {
  TrainConfig cfg;
  cfg.algorithm = TrainAlgorithm::PerceptronRule;
  cfg.learning_rate = 0.5;
  return cfg;
}

TrainConfig TrainConfig::gradient_descent_defaults() {
  TrainConfig cfg;
  cfg.algorithm = TrainAlgorithm::GradientDescent;
  cfg.learning_rate = 0.1;
  return cfg;
}

PairBlock make_metric_block(PairKey pair, const metric::DistanceField& field_i,
                            const metric::DistanceField& field_j) {
  return PairBlock{pair, field_i.dims, MetricParams{metric::build_pair_weights(field_i, field_j)}};
}

namespace {

class UniformSource {
 public:
  UniformSource(std::uint64_t seed, double scale) : rng_(seed), scale_(scale) {}

  // 53 random mantissa bits mapped onto [-scale, scale).
  double next() {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    if (scale_ == 0.0) return 0.0;
    return (2.0 * u - 1.0) * scale_;
  }

 private:
  std::mt19937_64 rng_;
  double scale_;
};

void require_dims(const PairBlock& block, const ImageGrid& input) {
  if (block.dims != input.dims()) {
    throw Error(ErrorKind::Dimension, "block dims " + to_string(block.dims) + " vs input " +
                                          to_string(input.dims()));
  }
}

double affine(const PerceptronParams& p, const ImageGrid& x) {
  double s = p.bias;
  const auto cells = x.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k]) s += p.weights[k];
  }
  return s;
}

struct Forward {
  std::vector<double> hidden;
  double output = 0.0;
};

Forward forward(const SigmoidParams& p, const ImageGrid& x) {
  const std::size_t n_in = p.input_count();
  const auto cells = x.cells();
  Forward f;
  f.hidden.resize(static_cast<std::size_t>(p.hidden_size));
  double z_out = p.output_bias;
  for (int h = 0; h < p.hidden_size; ++h) {
    const double* row = p.input_hidden.data() + static_cast<std::size_t>(h) * n_in;
    double z = p.hidden_bias[static_cast<std::size_t>(h)];
    for (std::size_t k = 0; k < n_in; ++k) {
      if (cells[k]) z += row[k];
    }
    f.hidden[static_cast<std::size_t>(h)] = sigmoid(z);
    z_out += p.hidden_output[static_cast<std::size_t>(h)] * f.hidden[static_cast<std::size_t>(h)];
  }
  f.output = sigmoid(z_out);
  return f;
}

int count_errors(const PairBlock& block, std::span<const ImageGrid> pos,
                 std::span<const ImageGrid> neg) {
  int errors = 0;
  for (const auto& x : pos) errors += block_bit(block, x) != 1;
  for (const auto& x : neg) errors += block_bit(block, x) != 0;
  return errors;
}

// Single sigmoid neuron over a perceptron's affine sum, same loss as SigmoidNet.
LossGradient perceptron_loss_gradient(const PerceptronParams& p, std::span<const ImageGrid> inputs,
                                      std::span<const double> targets) {
  LossGradient out;
  out.gradient.assign(p.weights.size() + 1, 0.0);
  const double n = static_cast<double>(inputs.size());
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const double y = sigmoid(affine(p, inputs[s]));
    const double diff = y - targets[s];
    out.loss += diff * diff / n;
    const double dz = 2.0 * diff / n * y * (1.0 - y);
    const auto cells = inputs[s].cells();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k]) out.gradient[k] += dz;
    }
    out.gradient.back() += dz;
  }
  return out;
}

TrainResult train_perceptron_rule(PairBlock block, std::span<const ImageGrid> pos,
                                  std::span<const ImageGrid> neg, const TrainConfig& cfg) {
  auto& p = std::get<PerceptronParams>(block.params);
  struct Example {
    const ImageGrid* x;
    int target;
  };
  std::vector<Example> order;
  order.reserve(pos.size() + neg.size());
  for (const auto& x : pos) order.push_back({&x, 1});
  for (const auto& x : neg) order.push_back({&x, 0});

  std::mt19937_64 rng(cfg.shuffle_seed);
  TrainResult result{block, {}};
  TrainReport& report = result.report;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (const auto& ex : order) {
      const int y = binarize_raw(BlockKind::Perceptron, affine(p, *ex.x));
      const int delta = ex.target - y;
      if (delta == 0) continue;
      const double step = cfg.learning_rate * delta;
      const auto cells = ex.x->cells();
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k]) p.weights[k] += step;
      }
      p.bias += step;
    }
    report.epochs_run = epoch + 1;
    report.final_train_errors = count_errors(block, pos, neg);
    if (report.final_train_errors <= cfg.target_train_errors) {
      report.converged = true;
      break;
    }
  }
  result.block = std::move(block);
  return result;
}

TrainResult train_gradient_descent(PairBlock block, std::span<const ImageGrid> pos,
                                   std::span<const ImageGrid> neg, const TrainConfig& cfg) {
  std::vector<ImageGrid> inputs;
  std::vector<double> targets;
  inputs.reserve(pos.size() + neg.size());
  for (const auto& x : pos) {
    inputs.push_back(x);
    targets.push_back(1.0);
  }
  for (const auto& x : neg) {
    inputs.push_back(x);
    targets.push_back(0.0);
  }

  TrainReport report;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    if (auto* sp = std::get_if<SigmoidParams>(&block.params)) {
      LossGradient lg = sigmoid_loss_gradient(*sp, inputs, targets);
      std::vector<double> flat = flatten_parameters(*sp);
      for (std::size_t k = 0; k < flat.size(); ++k) flat[k] -= cfg.learning_rate * lg.gradient[k];
      unflatten_parameters(*sp, flat);
      report.loss_trace.push_back(lg.loss);
    } else {
      auto& pp = std::get<PerceptronParams>(block.params);
      LossGradient lg = perceptron_loss_gradient(pp, inputs, targets);
      for (std::size_t k = 0; k < pp.weights.size(); ++k) {
        pp.weights[k] -= cfg.learning_rate * lg.gradient[k];
      }
      pp.bias -= cfg.learning_rate * lg.gradient.back();
      report.loss_trace.push_back(lg.loss);
    }
    report.epochs_run = epoch + 1;
    report.final_train_errors = count_errors(block, pos, neg);
    if (report.final_train_errors <= cfg.target_train_errors) {
      report.converged = true;
      break;
    }
  }
  return {std::move(block), std::move(report)};
}

}  // namespace

PairBlock init_block(BlockKind kind, PairKey pair, Dims dims, int hidden_size,
                     std::uint64_t init_seed, double init_scale) {
  if (dims.cols < 1 || dims.rows < 1) {
    throw Error(ErrorKind::Dimension, "block dims must be at least 1x1");
  }
  if (pair.i == pair.j) {
    throw Error(ErrorKind::Config, "block pair must join two different units");
  }
  if (!(init_scale >= 0.0)) {
    throw Error(ErrorKind::Config, "init_scale must be nonnegative");
  }
  const auto n_in = static_cast<std::size_t>(dims.cell_count());
  UniformSource src(init_seed, init_scale);
  switch (kind) {
    case BlockKind::Metric:
      throw Error(ErrorKind::Config, "metric blocks are built from samples, not initialized");
    case BlockKind::Perceptron: {
      PerceptronParams p;
      p.weights.resize(n_in);
      for (auto& w : p.weights) w = src.next();
      p.bias = src.next();
      return PairBlock{pair, dims, std::move(p)};
    }
    case BlockKind::SigmoidNet: {
      if (hidden_size < 1) {
        throw Error(ErrorKind::Config, "sigmoid block needs hidden_size >= 1");
      }
      SigmoidParams p;
      p.hidden_size = hidden_size;
      p.input_hidden.resize(n_in * static_cast<std::size_t>(hidden_size));
      p.hidden_bias.resize(static_cast<std::size_t>(hidden_size));
      p.hidden_output.resize(static_cast<std::size_t>(hidden_size));
      for (auto& w : p.input_hidden) w = src.next();
      for (auto& w : p.hidden_bias) w = src.next();
      for (auto& w : p.hidden_output) w = src.next();
      p.output_bias = src.next();
      return PairBlock{pair, dims, std::move(p)};
    }
  }
  throw Error(ErrorKind::Config, "unknown block kind");
}

TrainResult train_block(const PairBlock& block, std::span<const ImageGrid> pos,
                        std::span<const ImageGrid> neg, const TrainConfig& cfg) {
  if (block.kind() == BlockKind::Metric) {
    throw Error(ErrorKind::NotTrainable, "metric blocks are analytic and cannot be trained");
  }
  if (pos.empty() || neg.empty()) {
    throw Error(ErrorKind::InsufficientData,
                "block (" + std::to_string(block.pair.i) + "," + std::to_string(block.pair.j) +
                    ") needs examples of both classes");
  }
  if (!(cfg.learning_rate > 0.0) || cfg.max_epochs < 1) {
    throw Error(ErrorKind::Config, "learning_rate must be > 0 and max_epochs >= 1");
  }
  for (const auto& x : pos) require_dims(block, x);
  for (const auto& x : neg) require_dims(block, x);

  if (cfg.algorithm == TrainAlgorithm::PerceptronRule) {
    if (block.kind() != BlockKind::Perceptron) {
      throw Error(ErrorKind::Config, "perceptron rule applies to perceptron blocks only");
    }
    return train_perceptron_rule(block, pos, neg, cfg);
  }
  return train_gradient_descent(block, pos, neg, cfg);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double block_raw_output(const PairBlock& block, const ImageGrid& input) {
  require_dims(block, input);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MetricParams>) {
          return static_cast<double>(metric::weighted_sum(p.weights, input));
        } else if constexpr (std::is_same_v<T, PerceptronParams>) {
          return affine(p, input);
        } else {
          return forward(p, input).output;
        }
      },
      block.params);
}

int binarize_raw(BlockKind kind, double raw) {
  switch (kind) {
    case BlockKind::Metric: return raw < 0.0 ? 1 : 0;
    case BlockKind::Perceptron: return raw > 0.0 ? 1 : 0;
    case BlockKind::SigmoidNet: return raw > 0.5 ? 1 : 0;
  }
  return 0;
}

int block_bit(const PairBlock& block, const ImageGrid& input) {
  if (const auto* m = std::get_if<MetricParams>(&block.params)) {
    require_dims(block, input);
    return metric::threshold_fire(metric::weighted_sum(m->weights, input));
  }
  return binarize_raw(block.kind(), block_raw_output(block, input));
}

LossGradient sigmoid_loss_gradient(const SigmoidParams& p, std::span<const ImageGrid> inputs,
                                   std::span<const double> targets) {
  const std::size_t n_in = p.input_count();
  const auto hs = static_cast<std::size_t>(p.hidden_size);
  LossGradient out;
  out.gradient.assign(p.parameter_count(), 0.0);
  double* g_ih = out.gradient.data();
  double* g_hb = g_ih + p.input_hidden.size();
  double* g_ho = g_hb + hs;
  double* g_ob = g_ho + hs;

  const double n = static_cast<double>(inputs.size());
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const Forward f = forward(p, inputs[s]);
    const double diff = f.output - targets[s];
    out.loss += diff * diff / n;
    const double dz_out = 2.0 * diff / n * f.output * (1.0 - f.output);
    *g_ob += dz_out;
    const auto cells = inputs[s].cells();
    for (std::size_t h = 0; h < hs; ++h) {
      g_ho[h] += dz_out * f.hidden[h];
      const double dz_h = dz_out * p.hidden_output[h] * f.hidden[h] * (1.0 - f.hidden[h]);
      g_hb[h] += dz_h;
      double* row = g_ih + h * n_in;
      for (std::size_t k = 0; k < n_in; ++k) {
        if (cells[k]) row[k] += dz_h;
      }
    }
  }
  return out;
}

double sigmoid_loss(const SigmoidParams& p, std::span<const ImageGrid> inputs,
                    std::span<const double> targets) {
  double loss = 0.0;
  const double n = static_cast<double>(inputs.size());
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const double diff = forward(p, inputs[s]).output - targets[s];
    loss += diff * diff / n;
  }
  return loss;
}

std::vector<double> flatten_parameters(const SigmoidParams& p) {
  std::vector<double> flat;
  flat.reserve(p.parameter_count());
  flat.insert(flat.end(), p.input_hidden.begin(), p.input_hidden.end());
  flat.insert(flat.end(), p.hidden_bias.begin(), p.hidden_bias.end());
  flat.insert(flat.end(), p.hidden_output.begin(), p.hidden_output.end());
  flat.push_back(p.output_bias);
  return flat;
}

void unflatten_parameters(SigmoidParams& p, std::span<const double> flat) {
  if (flat.size() != p.parameter_count()) {
    throw Error(ErrorKind::Config, "parameter vector length mismatch");
  }
  auto it = flat.begin();
  std::copy_n(it, p.input_hidden.size(), p.input_hidden.begin());
  it += static_cast<std::ptrdiff_t>(p.input_hidden.size());
  std::copy_n(it, p.hidden_bias.size(), p.hidden_bias.begin());
  it += static_cast<std::ptrdiff_t>(p.hidden_bias.size());
  std::copy_n(it, p.hidden_output.size(), p.hidden_output.begin());
  it += static_cast<std::ptrdiff_t>(p.hidden_output.size());
  p.output_bias = *it;
}

}  // namespace pairnet
