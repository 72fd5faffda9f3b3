#pragma once

#include <cstdint>
#include <vector>

#include "pairnet/grid.hpp"

namespace pairnet::metric {

/// Squared Euclidean distance from every cell to the nearest active cell of
/// one sample. Zero exactly on the sample's active cells.
struct DistanceField {
  Dims dims;
  std::vector<std::int64_t> d2;  // row-major

  std::int64_t at(int c, int r) const { return d2[static_cast<std::size_t>(r) * dims.cols + c]; }
  friend bool operator==(const DistanceField&, const DistanceField&) = default;
};

/// First-layer weights of one pair block: field_i.d2 - field_j.d2 per cell.
/// Negative means the cell is nearer to sample i.
struct WeightGrid {
  Dims dims;
  std::vector<std::int64_t> w;  // row-major

  std::int64_t at(int c, int r) const { return w[static_cast<std::size_t>(r) * dims.cols + c]; }
  friend bool operator==(const WeightGrid&, const WeightGrid&) = default;
};

// Exhaustive scan over the sample's active cells. Throws DegenerateSample for
// an all-zero sample.
DistanceField distance_field(const ImageGrid& sample);

WeightGrid build_pair_weights(const DistanceField& field_i, const DistanceField& field_j);

std::int64_t weighted_sum(const WeightGrid& weights, const ImageGrid& input);

/// 1 iff sn < 0. A zero sum (equidistant input) does not fire.
constexpr int threshold_fire(std::int64_t sn) { return sn < 0 ? 1 : 0; }

/// Sum of the field over the input's active cells. weighted_sum(W_ij, x) is
/// sample_score(i, x) - sample_score(j, x).
std::int64_t sample_score(const DistanceField& field, const ImageGrid& input);

}  // namespace pairnet::metric
