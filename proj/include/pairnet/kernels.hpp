#pragma once

#include <cstdint>
#include <vector>

#include "pairnet/ensemble.hpp"
#include "pairnet/grid.hpp"
#include "pairnet/metric.hpp"

// Data-parallel kernels. serial:: is the reference; omp:: must match it
// bit-exactly and is what the library and CLI use for batch work.
namespace pairnet::kernels {

namespace serial {

metric::DistanceField distance_field(const ImageGrid& sample);
std::vector<metric::DistanceField> distance_fields(const std::vector<ImageGrid>& samples);
/// Row-major inputs x fields matrix of sample scores.
std::vector<std::int64_t> score_matrix(const std::vector<metric::DistanceField>& fields,
                                       const std::vector<ImageGrid>& inputs);
std::vector<Decision> predict_batch(const Ensemble& e, const std::vector<ImageGrid>& inputs);

}  // namespace serial

namespace omp {

metric::DistanceField distance_field(const ImageGrid& sample);
std::vector<metric::DistanceField> distance_fields(const std::vector<ImageGrid>& samples);
std::vector<std::int64_t> score_matrix(const std::vector<metric::DistanceField>& fields,
                                       const std::vector<ImageGrid>& inputs);
std::vector<Decision> predict_batch(const Ensemble& e, const std::vector<ImageGrid>& inputs);

}  // namespace omp

}  // namespace pairnet::kernels
