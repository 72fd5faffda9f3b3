#include <doctest.h>

#include "pairnet/error.hpp"
#include "pairnet/grid.hpp"
#include "test_util.hpp"

using namespace pairnet;

TEST_CASE("binarize_grid examples") {
  GrayGrid zeros{{3, 2}, std::vector<double>(6, 0.0)};
  CHECK(binarize_grid(zeros, 0.5).active_count() == 0);

  GrayGrid at{{1, 1}, {0.5}};
  CHECK(binarize_grid(at, 0.5).at(0, 0) == 0);

  GrayGrid g{{2, 2}, {0.9, 0.1, 0.6, 0.4}};
  const ImageGrid b = binarize_grid(g, 0.5);
  CHECK(b.at(0, 0) == 1);
  CHECK(b.at(1, 0) == 0);
  CHECK(b.at(0, 1) == 1);
  CHECK(b.at(1, 1) == 0);

  GrayGrid ones{{2, 1}, {1.0, 1.0}};
  CHECK(binarize_grid(ones, 1.0).active_count() == 0);
}

TEST_CASE("binarize_grid rejects empty grids and bad thresholds") {
  GrayGrid empty{{0, 0}, {}};
  CHECK_THROWS_AS(binarize_grid(empty, 0.5), Error);
  try {
    binarize_grid(empty, 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
  GrayGrid g{{1, 1}, {0.3}};
  CHECK_THROWS_AS(binarize_grid(g, 1.5), Error);
}

TEST_CASE("binarize output is binary for arbitrary gray input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    GrayGrid g{{1 + trial % 9, 1 + trial % 5}, {}};
    g.values.resize(static_cast<std::size_t>(g.dims.cell_count()));
    for (auto& v : g.values) v = u(rng);
    const double t = u(rng);
    const ImageGrid b = binarize_grid(g, t);
    for (std::size_t p = 0; p < b.size(); ++p) {
      REQUIRE(b[p] <= 1);
      CHECK(b[p] == (g.values[p] > t ? 1 : 0));
    }
  }
}

TEST_CASE("active_cells examples") {
  CHECK(active_cells(ImageGrid({4, 4})).empty());

  ImageGrid one({4, 5});
  one.set(2, 3, true);
  CHECK(active_cells(one) == std::vector<Cell>{{2, 3}});

  std::vector<std::uint8_t> full(4, 1);
  CHECK(active_cells(ImageGrid({2, 2}, full)) == std::vector<Cell>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("active_cells round-trips through from_cells") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Dims dims{1 + trial % 7, 1 + (trial / 7) % 6};
    const ImageGrid g = test::random_grid(dims, rng, 0.4);
    const auto cells = active_cells(g);
    CHECK(static_cast<int>(cells.size()) == g.active_count());
    CHECK(ImageGrid::from_cells(dims, cells) == g);
  }
}

TEST_CASE("ImageGrid validates its cells") {
  CHECK_THROWS_AS(ImageGrid(Dims{0, 3}), Error);
  CHECK_THROWS_AS(ImageGrid(Dims{2, 2}, std::vector<std::uint8_t>(3, 0)), Error);
  CHECK_THROWS_AS(ImageGrid(Dims{1, 1}, std::vector<std::uint8_t>{2}), Error);
}

namespace {

Dataset three_class() {
  Dataset ds;
  ds.class_count = 3;
  ds.dims = {3, 2};
  for (int k = 0; k < 3; ++k) {
    ImageGrid g(ds.dims);
    g.set(k, 0, true);
    ds.items.push_back({g, k});
  }
  return ds;
}

}  // namespace

TEST_CASE("validate_dataset examples") {
  const Dataset ok = three_class();
  CHECK(validate_dataset(ok).empty());

  Dataset bad_dims = ok;
  bad_dims.items[1].grid = ImageGrid({2, 2});
  bad_dims.items[1].grid.set(0, 0, true);
  const auto issues = validate_dataset(bad_dims);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].kind == IssueKind::DimensionMismatch);
  CHECK(issues[0].item == 1);

  Dataset missing = ok;
  missing.items.pop_back();
  const auto miss = validate_dataset(missing);
  REQUIRE(miss.size() == 1);
  CHECK(miss[0].kind == IssueKind::MissingLabel);
  CHECK(miss[0].label == 2);
}

TEST_CASE("validate_dataset flags all-zero images without failing") {
  Dataset ds = three_class();
  ds.items.push_back({ImageGrid(ds.dims), 0});
  const auto issues = validate_dataset(ds);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].kind == IssueKind::AllZeroImage);
  CHECK(dataset_usable(issues));
}

TEST_CASE("validate_dataset does not mutate its input") {
  Dataset ds = three_class();
  ds.items.push_back({ImageGrid({1, 1}), 7});
  const Dataset copy = ds;
  (void)validate_dataset(ds);
  REQUIRE(ds.items.size() == copy.items.size());
  for (std::size_t k = 0; k < ds.items.size(); ++k) {
    CHECK(ds.items[k].grid == copy.items[k].grid);
    CHECK(ds.items[k].label == copy.items[k].label);
  }
}
