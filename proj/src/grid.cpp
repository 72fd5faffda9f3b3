#include "pairnet/grid.hpp"

#include <algorithm>
#include <numeric>

#include "pairnet/error.hpp"

namespace pairnet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::DegenerateSample: return "degenerate-sample";
    case ErrorKind::Config: return "config";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::NotTrainable: return "not-trainable";
    case ErrorKind::Wiring: return "wiring";
    case ErrorKind::Growth: return "growth";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Load: return "load";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

std::string to_string(const Dims& d) {
  return std::to_string(d.cols) + "x" + std::to_string(d.rows);
}

namespace {

void check_dims(Dims dims) {
  if (dims.cols < 1 || dims.rows < 1) {
    throw Error(ErrorKind::Dimension, "grid dims must be at least 1x1, got " + to_string(dims));
  }
}

}  // namespace

ImageGrid::ImageGrid(Dims dims) : dims_(dims) {
  check_dims(dims);
  cells_.assign(static_cast<std::size_t>(dims.cols) * dims.rows, 0);
}

ImageGrid::ImageGrid(Dims dims, std::vector<std::uint8_t> cells)
    : dims_(dims), cells_(std::move(cells)) {
  check_dims(dims);
  if (cells_.size() != static_cast<std::size_t>(dims.cols) * dims.rows) {
    throw Error(ErrorKind::Dimension, "cell count " + std::to_string(cells_.size()) +
                                          " does not match dims " + to_string(dims));
  }
  if (std::any_of(cells_.begin(), cells_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(ErrorKind::Dimension, "grid cells must be 0 or 1");
  }
}

ImageGrid ImageGrid::from_cells(Dims dims, std::span<const Cell> active) {
  ImageGrid g(dims);
  for (const Cell& cell : active) {
    if (cell.c < 0 || cell.c >= dims.cols || cell.r < 0 || cell.r >= dims.rows) {
      throw Error(ErrorKind::Dimension, "cell outside grid");
    }
    g.set(cell.c, cell.r, true);
  }
  return g;
}

int ImageGrid::active_count() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

ImageGrid binarize_grid(const GrayGrid& gray, double threshold) {
  if (gray.dims.cols < 1 || gray.dims.rows < 1 || gray.values.empty()) {
    throw Error(ErrorKind::Dimension, "cannot binarize an empty grid");
  }
  if (gray.values.size() != static_cast<std::size_t>(gray.dims.cell_count())) {
    throw Error(ErrorKind::Dimension, "gray value count does not match dims " + to_string(gray.dims));
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::Config, "binarize threshold must lie in [0,1]");
  }
  std::vector<std::uint8_t> cells(gray.values.size());
  std::transform(gray.values.begin(), gray.values.end(), cells.begin(),
                 [threshold](double v) { return static_cast<std::uint8_t>(v > threshold); });
  return ImageGrid(gray.dims, std::move(cells));
}

Dataset binarize_dataset(const GrayDataset& gray, double threshold) {
  Dataset ds;
  ds.class_count = gray.class_count;
  ds.dims = gray.dims;
  ds.items.reserve(gray.items.size());
  for (const auto& item : gray.items) {
    ds.items.push_back({binarize_grid(item.grid, threshold), item.label});
  }
  return ds;
}

std::vector<Cell> active_cells(const ImageGrid& grid) {
  std::vector<Cell> out;
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (grid.at(c, r)) out.push_back({c, r});
    }
  }
  return out;
}

std::vector<DatasetIssue> validate_dataset(const Dataset& ds) {
  std::vector<DatasetIssue> issues;
  std::vector<bool> seen(static_cast<std::size_t>(std::max(ds.class_count, 0)), false);
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    const auto& item = ds.items[i];
    const int idx = static_cast<int>(i);
    if (item.grid.dims() != ds.dims) {
      issues.push_back({IssueKind::DimensionMismatch, idx, item.label,
                        "item " + std::to_string(i) + " has dims " + to_string(item.grid.dims()) +
                            ", dataset dims " + to_string(ds.dims)});
    }
    if (item.label < 0 || item.label >= ds.class_count) {
      issues.push_back({IssueKind::LabelOutOfRange, idx, item.label,
                        "item " + std::to_string(i) + " label " + std::to_string(item.label) +
                            " outside 0.." + std::to_string(ds.class_count - 1)});
    } else {
      seen[static_cast<std::size_t>(item.label)] = true;
    }
    if (item.grid.size() > 0 && item.grid.active_count() == 0) {
      issues.push_back({IssueKind::AllZeroImage, idx, item.label,
                        "item " + std::to_string(i) + " is all-zero"});
    }
  }
  for (int k = 0; k < ds.class_count; ++k) {
    if (!seen[static_cast<std::size_t>(k)]) {
      issues.push_back({IssueKind::MissingLabel, -1, k, "class " + std::to_string(k) + " has no items"});
    }
  }
  return issues;
}

bool dataset_usable(const std::vector<DatasetIssue>& issues) {
  return std::all_of(issues.begin(), issues.end(),
                     [](const DatasetIssue& i) { return i.kind == IssueKind::AllZeroImage; });
}

}  // namespace pairnet
