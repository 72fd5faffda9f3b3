#include "pairnet/kernels.hpp"

#include <limits>

#include "pairnet/error.hpp"

namespace pairnet::kernels {

namespace {

std::vector<Cell> require_active(const ImageGrid& sample) {
  auto active = active_cells(sample);
  if (active.empty()) {
    throw Error(ErrorKind::DegenerateSample,
                "sample has no active cells; distance to it is undefined");
  }
  return active;
}

std::int64_t nearest_d2(const std::vector<Cell>& active, int c, int r) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const Cell& a : active) {
    const std::int64_t dc = a.c - c;
    const std::int64_t dr = a.r - r;
    const std::int64_t d = dc * dc + dr * dr;
    if (d < best) best = d;
  }
  return best;
}

void check_inputs(const std::vector<metric::DistanceField>& fields,
                  const std::vector<ImageGrid>& inputs) {
  for (const auto& f : fields) {
    for (const auto& x : inputs) {
      if (f.dims != x.dims()) throw Error(ErrorKind::Dimension, "score_matrix: dims mismatch");
    }
  }
}

}  // namespace

namespace serial {

metric::DistanceField distance_field(const ImageGrid& sample) {
  const auto active = require_active(sample);
  metric::DistanceField f{sample.dims(), std::vector<std::int64_t>(sample.size())};
  for (int r = 0; r < sample.rows(); ++r) {
    for (int c = 0; c < sample.cols(); ++c) {
      f.d2[static_cast<std::size_t>(r) * sample.cols() + c] = nearest_d2(active, c, r);
    }
  }
  return f;
}

std::vector<metric::DistanceField> distance_fields(const std::vector<ImageGrid>& samples) {
  std::vector<metric::DistanceField> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(distance_field(s));
  return out;
}

std::vector<std::int64_t> score_matrix(const std::vector<metric::DistanceField>& fields,
                                       const std::vector<ImageGrid>& inputs) {
  check_inputs(fields, inputs);
  std::vector<std::int64_t> out(inputs.size() * fields.size());
  for (std::size_t x = 0; x < inputs.size(); ++x) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      out[x * fields.size() + k] = metric::sample_score(fields[k], inputs[x]);
    }
  }
  return out;
}

std::vector<Decision> predict_batch(const Ensemble& e, const std::vector<ImageGrid>& inputs) {
  std::vector<Decision> out;
  out.reserve(inputs.size());
  for (const auto& x : inputs) out.push_back(predict(e, x));
  return out;
}

}  // namespace serial

namespace omp {

metric::DistanceField distance_field(const ImageGrid& sample) {
  const auto active = require_active(sample);
  metric::DistanceField f{sample.dims(), std::vector<std::int64_t>(sample.size())};
  const int cols = sample.cols();
  const auto n = static_cast<std::int64_t>(sample.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < n; ++p) {
    f.d2[static_cast<std::size_t>(p)] =
        nearest_d2(active, static_cast<int>(p % cols), static_cast<int>(p / cols));
  }
  return f;
}

std::vector<metric::DistanceField> distance_fields(const std::vector<ImageGrid>& samples) {
  // Validate up front so no exception escapes the parallel region.
  for (const auto& s : samples) require_active(s);
  std::vector<metric::DistanceField> out(samples.size());
  const auto n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = serial::distance_field(samples[static_cast<std::size_t>(k)]);
  }
  return out;
}

std::vector<std::int64_t> score_matrix(const std::vector<metric::DistanceField>& fields,
                                       const std::vector<ImageGrid>& inputs) {
  check_inputs(fields, inputs);
  std::vector<std::int64_t> out(inputs.size() * fields.size());
  const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    const auto& in = inputs[static_cast<std::size_t>(x)];
    for (std::size_t k = 0; k < fields.size(); ++k) {
      out[static_cast<std::size_t>(x) * fields.size() + k] = metric::sample_score(fields[k], in);
    }
  }
  return out;
}

std::vector<Decision> predict_batch(const Ensemble& e, const std::vector<ImageGrid>& inputs) {
  for (const auto& x : inputs) {
    if (x.dims() != e.dims()) {
      throw Error(ErrorKind::Dimension, "input dims " + to_string(x.dims()) + ", network " +
                                            to_string(e.dims()));
    }
  }
  std::vector<Decision> out(inputs.size());
  const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t x = 0; x < n; ++x) {
    out[static_cast<std::size_t>(x)] = predict(e, inputs[static_cast<std::size_t>(x)]);
  }
  return out;
}

}  // namespace omp

}  // namespace pairnet::kernels
