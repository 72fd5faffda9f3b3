#include "pairnet/glyph_gen.hpp"

#include <array>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "pairnet/error.hpp"

namespace pairnet::glyphs {

namespace {

// clang-format off
constexpr std::array<std::array<std::string_view, 7>, kMaxClasses> kFont{{
  {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"},  // A
  {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."},  // B
  {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."},  // C
  {"####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."},  // D
  {"#####", "#....", "#....", "####.", "#....", "#....", "#####"},  // E
  {"#####", "#....", "#....", "####.", "#....", "#....", "#...."},  // F
  {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"},  // G
  {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"},  // H
  {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."},  // I
  {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."},  // J
  {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"},  // K
  {"#....", "#....", "#....", "#....", "#....", "#....", "#####"},  // L
  {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"},  // M
  {"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"},  // N
  {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},  // O
  {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."},  // P
  {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"},  // Q
  {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"},  // R
  {".####", "#....", "#....", ".###.", "....#", "....#", "####."},  // S
  {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."},  // T
  {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},  // U
  {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."},  // V
  {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."},  // W
  {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"},  // X
  {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."},  // Y
  {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"},  // Z
}};
// clang-format on

}  // namespace

ImageGrid letter(int index) {
  if (index < 0 || index >= kMaxClasses) {
    throw Error(ErrorKind::Config, "glyph index must be in 0.." + std::to_string(kMaxClasses - 1));
  }
  ImageGrid g(kGlyphDims);
  const auto& rows = kFont[static_cast<std::size_t>(index)];
  for (int r = 0; r < kGlyphDims.rows; ++r) {
    for (int c = 0; c < kGlyphDims.cols; ++c) {
      g.set(c, r, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '#');
    }
  }
  return g;
}

ImageGrid flip_cells(const ImageGrid& grid, int flips, std::uint64_t& rng_state) {
  const auto n = static_cast<int>(grid.size());
  if (flips < 0 || flips > n) throw Error(ErrorKind::Config, "flip count outside 0..cell count");
  std::mt19937_64 rng(rng_state);
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  // partial Fisher-Yates: the first `flips` entries are a uniform sample
  for (int k = 0; k < flips; ++k) {
    std::uniform_int_distribution<int> pick(k, n - 1);
    std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  rng_state = rng();
  ImageGrid out = grid;
  for (int k = 0; k < flips; ++k) {
    const auto p = static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
    out.set_index(p, !grid[p]);
  }
  return out;
}

Dataset generate(int classes, int samples_per_class, int noise, std::uint64_t seed) {
  if (classes < 2 || classes > kMaxClasses) {
    throw Error(ErrorKind::Config, "classes must be between 2 and " + std::to_string(kMaxClasses));
  }
  if (samples_per_class < 1) throw Error(ErrorKind::Config, "samples per class must be >= 1");
  if (noise < 0 || noise >= kGlyphDims.cell_count()) {
    throw Error(ErrorKind::Config, "noise must be in 0.." + std::to_string(kGlyphDims.cell_count() - 1));
  }
  Dataset ds;
  ds.class_count = classes;
  ds.dims = kGlyphDims;
  std::uint64_t state = seed;
  for (int k = 0; k < classes; ++k) {
    const ImageGrid clean = letter(k);
    for (int s = 0; s < samples_per_class; ++s) {
      ds.items.push_back({flip_cells(clean, noise, state), k});
    }
  }
  return ds;
}

}  // namespace pairnet::glyphs
