#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pairnet/grid.hpp"
#include "pairnet/metric.hpp"

namespace pairnet {

/// Ordered pair of second-layer unit ids. A block keyed (i, j) emits 1 when
/// the input belongs to i rather than j.
struct PairKey {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

enum class BlockKind { Metric, Perceptron, SigmoidNet };

std::string_view to_string(BlockKind kind);
BlockKind block_kind_from_string(std::string_view s);

struct MetricParams {
  metric::WeightGrid weights;
  friend bool operator==(const MetricParams&, const MetricParams&) = default;
};

struct PerceptronParams {
  std::vector<double> weights;  // one per input cell
  double bias = 0.0;
  friend bool operator==(const PerceptronParams&, const PerceptronParams&) = default;
};

// One hidden sigmoid layer feeding one sigmoid output.
struct SigmoidParams {
  int hidden_size = 0;
  std::vector<double> input_hidden;  // hidden_size x inputs, row per hidden unit
  std::vector<double> hidden_bias;   // hidden_size
  std::vector<double> hidden_output; // hidden_size
  double output_bias = 0.0;

  std::size_t input_count() const {
    return hidden_size > 0 ? input_hidden.size() / static_cast<std::size_t>(hidden_size) : 0;
  }
  std::size_t parameter_count() const {
    return input_hidden.size() + hidden_bias.size() + hidden_output.size() + 1;
  }
  friend bool operator==(const SigmoidParams&, const SigmoidParams&) = default;
};

using BlockParams = std::variant<MetricParams, PerceptronParams, SigmoidParams>;

struct PairBlock {
  PairKey pair;
  Dims dims;
  BlockParams params;

  BlockKind kind() const { return static_cast<BlockKind>(params.index()); }
  friend bool operator==(const PairBlock&, const PairBlock&) = default;
};

PairBlock make_metric_block(PairKey pair, const metric::DistanceField& field_i,
                            const metric::DistanceField& field_j);

/// Trainable block with parameters uniform in [-init_scale, +init_scale].
/// Deterministic for a fixed seed. Metric kind is not constructible here.
PairBlock init_block(BlockKind kind, PairKey pair, Dims dims, int hidden_size,
                     std::uint64_t init_seed, double init_scale);

enum class TrainAlgorithm { PerceptronRule, GradientDescent };

struct TrainConfig {
  TrainAlgorithm algorithm = TrainAlgorithm::PerceptronRule;
  double learning_rate = 0.5;
  int max_epochs = 1000;
  std::uint64_t shuffle_seed = 0;
  std::uint64_t init_seed = 0;
  double init_scale = 0.1;
  int target_train_errors = 0;

  static TrainConfig perceptron_defaults();
  static TrainConfig gradient_descent_defaults();
};

inline constexpr int kDefaultHiddenSize = 8;

struct TrainReport {
  int epochs_run = 0;
  int final_train_errors = 0;
  bool converged = false;
  std::vector<double> loss_trace;  // gradient descent only, loss before each step
  friend bool operator==(const TrainReport&, const TrainReport&) = default;
};

struct TrainResult {
  PairBlock block;
  TrainReport report;
};

// pos are examples of pair.i (target bit 1), neg of pair.j (target bit 0).
// PerceptronRule needs a Perceptron block; GradientDescent accepts Perceptron
// (single sigmoid neuron) or SigmoidNet.
TrainResult train_block(const PairBlock& block, std::span<const ImageGrid> pos,
                        std::span<const ImageGrid> neg, const TrainConfig& cfg);

double block_raw_output(const PairBlock& block, const ImageGrid& input);
int block_bit(const PairBlock& block, const ImageGrid& input);

/// Maps a pre-binarizer value to the block's output bit.
int binarize_raw(BlockKind kind, double raw);

double sigmoid(double z);

// Loss and gradient of the full-batch mean squared error used for gradient
// descent. Exposed for gradient checking. Gradient layout matches
// flatten_parameters.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

LossGradient sigmoid_loss_gradient(const SigmoidParams& params,
                                   std::span<const ImageGrid> inputs,
                                   std::span<const double> targets);
double sigmoid_loss(const SigmoidParams& params, std::span<const ImageGrid> inputs,
                    std::span<const double> targets);

std::vector<double> flatten_parameters(const SigmoidParams& params);
void unflatten_parameters(SigmoidParams& params, std::span<const double> flat);

}  // namespace pairnet
