#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pairnet {

struct Dims {
  int cols = 0;
  int rows = 0;

  int cell_count() const { return cols * rows; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(const Dims& d);

// (c, r) = (column, row). Storage everywhere is row-major: index = r * cols + c.
struct Cell {
  int c = 0;
  int r = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Binary C x R pixel grid. Cells are 0 or 1; dims are at least 1 x 1.
class ImageGrid {
 public:
  ImageGrid() = default;
  /// All-zero grid. Throws a dimension error on non-positive dims.
  explicit ImageGrid(Dims dims);
  /// Throws if the cell count disagrees with dims or any cell is not 0/1.
  ImageGrid(Dims dims, std::vector<std::uint8_t> cells);

  static ImageGrid from_cells(Dims dims, std::span<const Cell> active);

  Dims dims() const { return dims_; }
  int cols() const { return dims_.cols; }
  int rows() const { return dims_.rows; }
  std::size_t size() const { return cells_.size(); }

  std::uint8_t at(int c, int r) const { return cells_[index(c, r)]; }
  void set(int c, int r, bool on) { cells_[index(c, r)] = on ? 1 : 0; }
  std::uint8_t operator[](std::size_t i) const { return cells_[i]; }
  void set_index(std::size_t i, bool on) { cells_[i] = on ? 1 : 0; }
  std::span<const std::uint8_t> cells() const { return cells_; }

  int active_count() const;

  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

 private:
  std::size_t index(int c, int r) const {
    return static_cast<std::size_t>(r) * dims_.cols + c;
  }

  Dims dims_;
  std::vector<std::uint8_t> cells_;
};

/// Real-valued grid in [0,1], the pre-binarization form of an input.
struct GrayGrid {
  Dims dims;
  std::vector<double> values;  // row-major
};

struct LabeledImage {
  ImageGrid grid;
  int label = 0;
};

struct Dataset {
  int class_count = 0;
  Dims dims;
  std::vector<LabeledImage> items;
};

struct GrayLabeledImage {
  GrayGrid grid;
  int label = 0;
};

struct GrayDataset {
  int class_count = 0;
  Dims dims;
  std::vector<GrayLabeledImage> items;
};

/// Cell = 1 iff value > threshold (strict).
ImageGrid binarize_grid(const GrayGrid& gray, double threshold);
Dataset binarize_dataset(const GrayDataset& gray, double threshold);

/// Active cells in row-major order.
std::vector<Cell> active_cells(const ImageGrid& grid);

enum class IssueKind { DimensionMismatch, MissingLabel, LabelOutOfRange, AllZeroImage };

struct DatasetIssue {
  IssueKind kind;
  int item = -1;   // -1 when the issue is not tied to an item
  int label = -1;
  std::string message;
};

std::vector<DatasetIssue> validate_dataset(const Dataset& ds);

/// True if none of the issues is fatal; all-zero images are only flagged.
bool dataset_usable(const std::vector<DatasetIssue>& issues);

}  // namespace pairnet
