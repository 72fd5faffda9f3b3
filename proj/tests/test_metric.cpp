#include <doctest.h>

#include <cmath>
#include <limits>

#include "pairnet/error.hpp"
#include "pairnet/metric.hpp"
#include "test_util.hpp"

using namespace pairnet;
using namespace pairnet::metric;

namespace {

// Reference: min over every (cell, active cell) pair by plain double loop.
std::vector<std::int64_t> brute_field(const ImageGrid& s) {
  std::vector<std::int64_t> out;
  for (int r = 0; r < s.rows(); ++r) {
    for (int c = 0; c < s.cols(); ++c) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (int ar = 0; ar < s.rows(); ++ar) {
        for (int ac = 0; ac < s.cols(); ++ac) {
          if (s.at(ac, ar)) best = std::min<std::int64_t>(best, (ac - c) * (ac - c) + (ar - r) * (ar - r));
        }
      }
      out.push_back(best);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("distance_field examples") {
  ImageGrid a({3, 1});
  a.set(0, 0, true);
  CHECK(distance_field(a).d2 == std::vector<std::int64_t>{0, 1, 4});

  ImageGrid full({3, 3}, std::vector<std::uint8_t>(9, 1));
  CHECK(distance_field(full).d2 == std::vector<std::int64_t>(9, 0));

  ImageGrid two({4, 1});
  two.set(0, 0, true);
  two.set(3, 0, true);
  CHECK(distance_field(two).d2 == std::vector<std::int64_t>{0, 1, 1, 0});
}

TEST_CASE("distance_field rejects all-zero samples") {
  try {
    (void)distance_field(ImageGrid({3, 3}));
    FAIL("expected degenerate-sample error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateSample);
  }
}

TEST_CASE("distance_field matches brute force for every one- and two-pixel sample up to 8x8") {
  for (int cols = 1; cols <= 8; ++cols) {
    for (int rows = 1; rows <= 8; ++rows) {
      const Dims dims{cols, rows};
      const int n = dims.cell_count();
      for (int p = 0; p < n; ++p) {
        for (int q = p; q < n; ++q) {
          ImageGrid s(dims);
          s.set_index(static_cast<std::size_t>(p), true);
          s.set_index(static_cast<std::size_t>(q), true);
          const auto f = distance_field(s);
          REQUIRE(f.d2 == brute_field(s));
        }
      }
    }
  }
}

TEST_CASE("distance field invariants on random samples") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Dims dims{1 + trial % 12, 1 + (trial / 12) % 10};
    const ImageGrid s = test::random_nonempty_grid(dims, rng, 0.15);
    const auto f = distance_field(s);
    const std::int64_t bound = std::int64_t{dims.cols - 1} * (dims.cols - 1) +
                               std::int64_t{dims.rows - 1} * (dims.rows - 1);
    for (int r = 0; r < dims.rows; ++r) {
      for (int c = 0; c < dims.cols; ++c) {
        CHECK((f.at(c, r) == 0) == (s.at(c, r) == 1));
        CHECK(f.at(c, r) <= bound);
        auto lipschitz = [&](int c2, int r2) {
          const double d = std::sqrt(double(f.at(c, r))) - std::sqrt(double(f.at(c2, r2)));
          CHECK(d * d <= 1.0 + 1e-9);
        };
        if (c + 1 < dims.cols) lipschitz(c + 1, r);
        if (r + 1 < dims.rows) lipschitz(c, r + 1);
      }
    }
  }
}

TEST_CASE("build_pair_weights examples") {
  ImageGrid a({3, 1});
  a.set(0, 0, true);
  ImageGrid b({3, 1});
  b.set(2, 0, true);
  const auto fa = distance_field(a);
  const auto fb = distance_field(b);
  CHECK(build_pair_weights(fa, fa).w == std::vector<std::int64_t>(3, 0));
  CHECK(build_pair_weights(fa, fb).w == std::vector<std::int64_t>{-4, 0, 4});
  CHECK(build_pair_weights(fb, fa).w == std::vector<std::int64_t>{4, 0, -4});

  ImageGrid c({2, 1});
  c.set(0, 0, true);
  CHECK_THROWS_AS(build_pair_weights(fa, distance_field(c)), Error);
}

TEST_CASE("weighted_sum examples") {
  ImageGrid a({3, 1});
  a.set(0, 0, true);
  ImageGrid b({3, 1});
  b.set(2, 0, true);
  const auto w = build_pair_weights(distance_field(a), distance_field(b));
  CHECK(weighted_sum(w, ImageGrid({3, 1})) == 0);
  CHECK(weighted_sum(w, a) < 0);
  ImageGrid single({3, 1});
  single.set(2, 0, true);
  CHECK(weighted_sum(w, single) == w.at(2, 0));
  CHECK_THROWS_AS(weighted_sum(w, ImageGrid({2, 2})), Error);
}

TEST_CASE("threshold_fire") {
  CHECK(threshold_fire(-5) == 1);
  CHECK(threshold_fire(5) == 0);
  CHECK(threshold_fire(0) == 0);
}

TEST_CASE("sample_score examples") {
  ImageGrid s({3, 1});
  s.set(0, 0, true);
  const auto f = distance_field(s);
  CHECK(sample_score(f, s) == 0);
  CHECK(sample_score(f, ImageGrid({3, 1})) == 0);
  ImageGrid x({3, 1});
  x.set(1, 0, true);
  CHECK(sample_score(f, x) == 1);
  CHECK_THROWS_AS(sample_score(f, ImageGrid({1, 3})), Error);
}

TEST_CASE("antisymmetry, decomposition and sign semantics on random pairs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Dims dims{2 + trial % 9, 2 + (trial / 9) % 7};
    const auto fi = distance_field(test::random_nonempty_grid(dims, rng, 0.2));
    const auto fj = distance_field(test::random_nonempty_grid(dims, rng, 0.2));
    const auto wij = build_pair_weights(fi, fj);
    const auto wji = build_pair_weights(fj, fi);
    for (std::size_t p = 0; p < wij.w.size(); ++p) REQUIRE(wij.w[p] == -wji.w[p]);
    for (int k = 0; k < 20; ++k) {
      const ImageGrid x = test::random_grid(dims, rng, 0.3);
      const auto si = sample_score(fi, x);
      const auto sj = sample_score(fj, x);
      CHECK(weighted_sum(wij, x) == si - sj);
      CHECK((threshold_fire(weighted_sum(wij, x)) == 1) == (si < sj));
    }
  }
}
