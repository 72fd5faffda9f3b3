#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pairnet/grid.hpp"

namespace pairnet::test {

inline ImageGrid random_grid(Dims dims, std::mt19937_64& rng, double density = 0.3) {
  std::bernoulli_distribution on(density);
  ImageGrid g(dims);
  for (std::size_t p = 0; p < g.size(); ++p) g.set_index(p, on(rng));
  return g;
}

inline ImageGrid random_nonempty_grid(Dims dims, std::mt19937_64& rng, double density = 0.3) {
  for (;;) {
    ImageGrid g = random_grid(dims, rng, density);
    if (g.active_count() > 0) return g;
  }
}

/// Grid whose cells are the bits of `code`, row-major, low bit first.
inline ImageGrid grid_from_code(Dims dims, std::uint64_t code) {
  ImageGrid g(dims);
  for (std::size_t p = 0; p < g.size(); ++p) g.set_index(p, (code >> p) & 1U);
  return g;
}

inline ImageGrid rows_grid(const std::vector<const char*>& rows) {
  const Dims dims{static_cast<int>(std::char_traits<char>::length(rows[0])),
                  static_cast<int>(rows.size())};
  ImageGrid g(dims);
  for (int r = 0; r < dims.rows; ++r) {
    for (int c = 0; c < dims.cols; ++c) g.set(c, r, rows[static_cast<std::size_t>(r)][c] == '#');
  }
  return g;
}

}  // namespace pairnet::test
