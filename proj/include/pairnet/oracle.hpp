#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pairnet/ensemble.hpp"
#include "pairnet/grid.hpp"

// Brute-force references for the test suite. Nothing here calls into the
// metric, pair-block or ensemble evaluation code.
namespace pairnet::oracle {

struct OracleVerdict {
  Decision decision;
  std::vector<std::int64_t> scores;  // per-unit scores (metric) or win counts (tournament)
};

/// Nearest-sample rule by direct double loop: Class(argmin) when the minimum
/// score is unique, else NoDecision. Unit k maps to class k.
OracleVerdict metric_oracle(const std::vector<ImageGrid>& samples, const ImageGrid& input);

/// Win counts and the all-wins rule, scanned literally.
OracleVerdict tournament_oracle(const BitMatrix& b, int n);

/// Integer hyperplane: score(x) = bias + sum of weights over active cells.
/// Class i is the positive side.
struct LinearWitness {
  std::vector<std::int64_t> weights;
  std::int64_t bias = 0;
  std::int64_t margin = 0;  // min over examples of signed score
};

/// Signed score minimum over every example (pos count positive).
std::int64_t min_margin(const LinearWitness& w, std::span<const ImageGrid> pos,
                        std::span<const ImageGrid> neg);

/// Exhaustive search over integer weights in [-bound, bound] per cell and
/// biases in [-bound * (cells + 1), bound * (cells + 1)]. Tiny grids only.
std::optional<LinearWitness> exhaustive_separability(std::span<const ImageGrid> pos,
                                                     std::span<const ImageGrid> neg, int bound);

/// Hamming-template hyperplane between the per-cell majority prototypes of
/// pos and neg, checked against every example. A returned witness proves
/// linear separability.
std::optional<LinearWitness> prototype_separability(std::span<const ImageGrid> pos,
                                                    std::span<const ImageGrid> neg);

}  // namespace pairnet::oracle
