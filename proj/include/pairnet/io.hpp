#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairnet/ensemble.hpp"
#include "pairnet/grid.hpp"

namespace pairnet::io {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// IDX tensors: big-endian magic (0x00000803 images, 0x00000801 labels), one
// big-endian u32 per dimension, then unsigned bytes. Parse errors name the
// byte offset.
struct IdxImages {
  Dims dims;
  std::vector<GrayGrid> images;
};

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes);

/// Gray values are byte / 255.
GrayDataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels);

std::vector<std::uint8_t> encode_idx_images(Dims dims,
                                            const std::vector<std::vector<std::uint8_t>>& images);
std::vector<std::uint8_t> encode_idx_labels(const std::vector<std::uint8_t>& labels);

// Glyph text: records separated by blank lines, each "label <id>" followed by
// R rows of C characters, '#' = 1 and '.' = 0.
Dataset parse_glyphs(std::string_view text);
Dataset load_glyphs(const std::filesystem::path& path);
std::string format_glyphs(const Dataset& ds);
std::string format_grid_rows(const ImageGrid& grid);

inline constexpr int kModelFormatVersion = 1;

struct ModelFile {
  Ensemble ensemble;
  double binarize_threshold = 0.5;
  // Per-unit samples of a metric network, kept so the network can grow
  // without the original dataset. Empty for trained networks.
  std::vector<ImageGrid> unit_samples;
};

std::string model_to_json(const ModelFile& model);
/// Validates block counts, B = N - 1 and wiring; throws Load on violation.
ModelFile model_from_json(std::string_view text);
void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

/// Canonical serialized form of one block, as written into the model file.
std::string serialize_block(const PairBlock& block);

std::string hex_double(double v);
double parse_hex_double(std::string_view s);

}  // namespace pairnet::io
