#include "pairnet/metric.hpp"

#include <limits>

#include "pairnet/error.hpp"
#include "pairnet/kernels.hpp"

namespace pairnet::metric {

namespace {

void require_same(Dims a, Dims b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::Dimension,
                std::string(what) + ": dims " + to_string(a) + " vs " + to_string(b));
  }
}

}  // namespace

DistanceField distance_field(const ImageGrid& sample) {
  return kernels::serial::distance_field(sample);
}

WeightGrid build_pair_weights(const DistanceField& field_i, const DistanceField& field_j) {
  require_same(field_i.dims, field_j.dims, "build_pair_weights");
  WeightGrid out{field_i.dims, std::vector<std::int64_t>(field_i.d2.size())};
  for (std::size_t p = 0; p < out.w.size(); ++p) out.w[p] = field_i.d2[p] - field_j.d2[p];
  return out;
}

std::int64_t weighted_sum(const WeightGrid& weights, const ImageGrid& input) {
  require_same(weights.dims, input.dims(), "weighted_sum");
  std::int64_t sum = 0;
  const auto cells = input.cells();
  for (std::size_t p = 0; p < cells.size(); ++p) {
    if (cells[p]) sum += weights.w[p];
  }
  return sum;
}

std::int64_t sample_score(const DistanceField& field, const ImageGrid& input) {
  require_same(field.dims, input.dims(), "sample_score");
  std::int64_t sum = 0;
  const auto cells = input.cells();
  for (std::size_t p = 0; p < cells.size(); ++p) {
    if (cells[p]) sum += field.d2[p];
  }
  return sum;
}

}  // namespace pairnet::metric
