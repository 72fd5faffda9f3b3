#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pairnet/ensemble.hpp"
#include "pairnet/grid.hpp"
#include "pairnet/pair_block.hpp"

namespace pairnet::training {

struct PairwiseOptions {
  BlockKind kind = BlockKind::Perceptron;
  Topology topology = Topology::Compressed;
  TrainConfig config = TrainConfig::perceptron_defaults();
  int hidden_size = kDefaultHiddenSize;
  std::uint64_t seed = 0;
};

/// Per-block seed derived from the global seed and the pair key, so each
/// block trains the same way regardless of scheduling.
std::uint64_t block_seed(std::uint64_t seed, PairKey key, std::uint64_t stream);

struct BlockReport {
  PairKey pair;
  TrainReport report;
};

/// Examples grouped by second-layer unit.
using UnitExamples = std::map<int, std::vector<ImageGrid>>;

/// Initializes and trains one block per key, in parallel. Block (i, j) sees
/// only the examples of units i and j. Results are ordered by key.
std::map<PairKey, TrainResult> train_blocks(const std::vector<PairKey>& keys,
                                            const UnitExamples& examples, Dims dims,
                                            const PairwiseOptions& opts);

struct TrainedEnsemble {
  Ensemble ensemble;
  std::vector<BlockReport> reports;  // ascending pair key
};

/// One unit per class (identity grouping), one block per class pair.
TrainedEnsemble train_pairwise(const Dataset& ds, const PairwiseOptions& opts);

UnitExamples examples_by_label(const Dataset& ds);

}  // namespace pairnet::training
