#pragma once

#include <cstdint>

#include "pairnet/grid.hpp"

namespace pairnet::glyphs {

inline constexpr Dims kGlyphDims{5, 7};
inline constexpr int kMaxClasses = 26;

/// Clean 5x7 bitmap of letter 'A' + index.
ImageGrid letter(int index);

/// Copy of grid with exactly `flips` distinct cells inverted, chosen
/// uniformly without replacement.
ImageGrid flip_cells(const ImageGrid& grid, int flips, std::uint64_t& rng_state);

/// classes x samples_per_class records in class-major order, each flipping
/// exactly `noise` cells of its letter. Deterministic under seed.
Dataset generate(int classes, int samples_per_class, int noise, std::uint64_t seed);

}  // namespace pairnet::glyphs
