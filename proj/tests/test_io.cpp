#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "pairnet/error.hpp"
#include "pairnet/io.hpp"

#include <json.hpp>
#include "test_util.hpp"

using namespace pairnet;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pairnet_test_" + name);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("IDX images and labels") {
  const auto img_path = temp_path("img.idx");
  const auto lab_path = temp_path("lab.idx");
  io::write_file(img_path, std::string_view());
  const auto bytes = io::encode_idx_images({2, 2}, {{0, 255, 128, 64}});
  const auto labels = io::encode_idx_labels({3});
  io::write_file(img_path, std::string(bytes.begin(), bytes.end()));
  io::write_file(lab_path, std::string(labels.begin(), labels.end()));
  const GrayDataset ds = io::load_idx(img_path, lab_path);
  REQUIRE(ds.items.size() == 1);
  CHECK(ds.dims == Dims{2, 2});
  CHECK(ds.class_count == 4);
  CHECK(ds.items[0].label == 3);
  const auto& v = ds.items[0].grid.values;
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 1.0);
  CHECK(v[2] == doctest::Approx(0.502).epsilon(1e-3));
  CHECK(v[3] == doctest::Approx(0.251).epsilon(1e-3));

  // label file carrying the image magic
  CHECK(kind_of([&] { io::parse_idx_labels(bytes); }) == ErrorKind::Parse);
  try {
    io::parse_idx_labels(bytes);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset 0") != std::string::npos);
  }

  std::vector<std::vector<std::uint8_t>> ten(10, std::vector<std::uint8_t>(4, 0));
  const auto ten_bytes = io::encode_idx_images({2, 2}, ten);
  const auto nine = io::encode_idx_labels(std::vector<std::uint8_t>(9, 0));
  io::write_file(img_path, std::string(ten_bytes.begin(), ten_bytes.end()));
  io::write_file(lab_path, std::string(nine.begin(), nine.end()));
  try {
    (void)io::load_idx(img_path, lab_path);
    FAIL("count mismatch accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("disagrees") != std::string::npos);
  }

  auto truncated = ten_bytes;
  truncated.pop_back();
  CHECK(kind_of([&] { io::parse_idx_images(truncated); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { io::parse_idx_images(std::vector<std::uint8_t>{0, 0, 8}); }) == ErrorKind::Parse);
}

TEST_CASE("glyph parsing") {
  const Dataset ds = io::parse_glyphs("label 0\n#.#\n.#.\n");
  REQUIRE(ds.items.size() == 1);
  CHECK(ds.dims == Dims{3, 2});
  CHECK(ds.items[0].label == 0);
  CHECK(ds.items[0].grid == test::rows_grid({"#.#", ".#."}));

  const Dataset two = io::parse_glyphs("label 1\n##\n..\n\n\nlabel 0\r\n.#\r\n#.\r\n");
  CHECK(two.items.size() == 2);
  CHECK(two.class_count == 2);

  auto message = [](std::string_view text) {
    try {
      (void)io::parse_glyphs(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("label 0\n#.#\n.#\n").find("line 3: ragged row") != std::string::npos);
  CHECK(message("").find("empty dataset") != std::string::npos);
  CHECK(message("label 0\n#x#\n").find("line 2: foreign character") != std::string::npos);
  CHECK(message("#.#\n").find("line 1: expected 'label") != std::string::npos);
  CHECK(message("label 0\n##\n\nlabel 1\n###\n").find("line 4") != std::string::npos);
  CHECK(message("label -3\n#\n").find("line 1") != std::string::npos);
}

TEST_CASE("glyph format round-trips") {
  std::mt19937_64 rng(2);
  Dataset ds;
  ds.dims = {4, 3};
  ds.class_count = 3;
  for (int k = 0; k < 9; ++k) ds.items.push_back({test::random_grid(ds.dims, rng), k % 3});
  const Dataset back = io::parse_glyphs(io::format_glyphs(ds));
  REQUIRE(back.items.size() == ds.items.size());
  for (std::size_t k = 0; k < ds.items.size(); ++k) {
    CHECK(back.items[k].grid == ds.items[k].grid);
    CHECK(back.items[k].label == ds.items[k].label);
  }
}

TEST_CASE("hex doubles round-trip bit-exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = k % 3 ? u(rng) : u(rng) * 1e-300;
    CHECK(io::parse_hex_double(io::hex_double(v)) == v);
  }
  CHECK(io::hex_double(0.5) == "0x1p-1");
  CHECK(io::hex_double(-0.0) == "-0x0p+0");
  CHECK(std::signbit(io::parse_hex_double("-0x0p+0")));
  CHECK_THROWS_AS(io::parse_hex_double("1.5"), Error);
  CHECK_THROWS_AS(io::parse_hex_double("0x"), Error);
}

namespace {

io::ModelFile metric_model(Topology t) {
  std::mt19937_64 rng(6);
  std::vector<ImageGrid> samples;
  for (int k = 0; k < 3; ++k) samples.push_back(test::random_nonempty_grid({5, 5}, rng));
  return io::ModelFile{build_metric_ensemble(samples, {}, t), 0.5, samples};
}

}  // namespace

TEST_CASE("model save/load round trip") {
  const auto path = temp_path("model.json");
  const io::ModelFile m = metric_model(Topology::Compressed);
  io::save_model(m, path);
  const io::ModelFile back = io::load_model(path);
  CHECK(back.ensemble.blocks() == m.ensemble.blocks());
  CHECK(back.unit_samples == m.unit_samples);
  CHECK(io::model_to_json(back) == io::model_to_json(m));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const auto x = test::random_grid({5, 5}, rng);
    REQUIRE(predict(back.ensemble, x) == predict(m.ensemble, x));
  }

  std::map<PairKey, PairBlock> blocks;
  for (const auto& key : required_pairs(3, Topology::Full)) {
    blocks.emplace(key, init_block(key.i == 0 ? BlockKind::SigmoidNet : BlockKind::Perceptron, key,
                                   {4, 4}, 3, rng(), 2.0));
  }
  const io::ModelFile trained{assemble(blocks, identity_groups(3), Topology::Full, {4, 4}), 0.3, {}};
  const io::ModelFile tback = io::model_from_json(io::model_to_json(trained));
  CHECK(tback.ensemble.blocks() == trained.ensemble.blocks());
  CHECK(tback.binarize_threshold == 0.3);
}

TEST_CASE("model load rejects invariant violations") {
  const std::string text = io::model_to_json(metric_model(Topology::Compressed));
  auto load_message = [](const std::string& doc) {
    try {
      (void)io::model_from_json(doc);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Load);
      return std::string(e.what());
    }
    return std::string("loaded");
  };
  CHECK(load_message(text) == "loaded");

  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = text;
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
  };
  CHECK(load_message(replaced("\"unit_threshold\": 2", "\"unit_threshold\": 3")).find("B = N-1") !=
        std::string::npos);
  CHECK(load_message(replaced("\"format_version\": 1", "\"format_version\": 9")).find("format_version") !=
        std::string::npos);
  CHECK(load_message(text.substr(0, text.size() / 2)).find("malformed") != std::string::npos);

  // A fourth block for N=3 compressed.
  auto doc = nlohmann::ordered_json::parse(text);
  doc["blocks"].push_back(doc["blocks"][0]);
  CHECK(load_message(doc.dump()).find("block count 4 violates N(N-1)/2 = 3") != std::string::npos);
  auto dup = nlohmann::ordered_json::parse(text);
  dup["blocks"][1]["pair"] = {0, 1};
  CHECK(load_message(dup.dump()).find("duplicate block") != std::string::npos);
  auto swapped = nlohmann::ordered_json::parse(text);
  swapped["blocks"][1]["pair"] = {2, 0};
  CHECK(load_message(swapped.dump()).find("invalid network") != std::string::npos);
}
