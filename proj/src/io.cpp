#include "pairnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "pairnet/error.hpp"

namespace pairnet::io {

using ordered_json = nlohmann::ordered_json;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

// ---------------------------------------------------------------- IDX

namespace {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;
constexpr std::uint32_t kMaxSide = 4096;

Error idx_error(std::size_t offset, const std::string& what) {
  return Error(ErrorKind::Parse, "idx: " + what + " at offset " + std::to_string(offset));
}

std::uint32_t read_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (bytes.size() < offset + 4) throw idx_error(offset, "truncated header");
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void check_payload(std::span<const std::uint8_t> bytes, std::size_t header, std::uint64_t payload) {
  if (bytes.size() - header < payload) {
    throw idx_error(bytes.size(), "truncated payload (expected " + std::to_string(payload) +
                                      " bytes after header)");
  }
  if (bytes.size() - header > payload) {
    throw idx_error(header + payload, "trailing bytes after payload");
  }
}

}  // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
  const std::uint32_t magic = read_u32(bytes, 0);
  if (magic != kIdxImagesMagic) throw idx_error(0, "wrong magic for image tensor");
  const std::uint32_t count = read_u32(bytes, 4);
  const std::uint32_t rows = read_u32(bytes, 8);
  const std::uint32_t cols = read_u32(bytes, 12);
  if (rows == 0 || cols == 0 || rows > kMaxSide || cols > kMaxSide) {
    throw idx_error(8, "image side outside 1.." + std::to_string(kMaxSide));
  }
  const std::size_t header = 16;
  const std::uint64_t per_image = std::uint64_t{rows} * cols;
  check_payload(bytes, header, per_image * count);

  IdxImages out;
  out.dims = Dims{static_cast<int>(cols), static_cast<int>(rows)};
  out.images.reserve(count);
  std::size_t offset = header;
  for (std::uint32_t n = 0; n < count; ++n) {
    GrayGrid g{out.dims, std::vector<double>(per_image)};
    for (std::uint64_t p = 0; p < per_image; ++p) g.values[p] = bytes[offset++] / 255.0;
    out.images.push_back(std::move(g));
  }
  return out;
}

std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  const std::uint32_t magic = read_u32(bytes, 0);
  if (magic != kIdxLabelsMagic) throw idx_error(0, "wrong magic for label vector");
  const std::uint32_t count = read_u32(bytes, 4);
  check_payload(bytes, 8, count);
  return {bytes.begin() + 8, bytes.end()};
}

GrayDataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels) {
  const auto image_bytes = read_file(images);
  const auto label_bytes = read_file(labels);
  IdxImages imgs = parse_idx_images(image_bytes);
  const std::vector<int> lab = parse_idx_labels(label_bytes);
  if (imgs.images.size() != lab.size()) {
    throw Error(ErrorKind::Parse, "idx: image count " + std::to_string(imgs.images.size()) +
                                      " disagrees with label count " + std::to_string(lab.size()) +
                                      " (offset 4)");
  }
  GrayDataset ds;
  ds.dims = imgs.dims;
  ds.class_count = lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
  for (std::size_t k = 0; k < lab.size(); ++k) {
    ds.items.push_back({std::move(imgs.images[k]), lab[k]});
  }
  return ds;
}

std::vector<std::uint8_t> encode_idx_images(Dims dims,
                                            const std::vector<std::vector<std::uint8_t>>& images) {
  std::vector<std::uint8_t> out;
  put_u32(out, kIdxImagesMagic);
  put_u32(out, static_cast<std::uint32_t>(images.size()));
  put_u32(out, static_cast<std::uint32_t>(dims.rows));
  put_u32(out, static_cast<std::uint32_t>(dims.cols));
  for (const auto& img : images) {
    if (img.size() != static_cast<std::size_t>(dims.cell_count())) {
      throw Error(ErrorKind::Dimension, "idx image size does not match dims");
    }
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::vector<std::uint8_t> encode_idx_labels(const std::vector<std::uint8_t>& labels) {
  std::vector<std::uint8_t> out;
  put_u32(out, kIdxLabelsMagic);
  put_u32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

// ---------------------------------------------------------------- glyphs

namespace {

constexpr int kMaxLabel = 65535;

Error glyph_error(std::size_t line, const std::string& what) {
  return Error(ErrorKind::Parse, "glyphs: line " + std::to_string(line) + ": " + what);
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char ch) { return ch == ' ' || ch == '\t'; });
}

int parse_label_line(std::string_view line, std::size_t lineno) {
  constexpr std::string_view prefix = "label ";
  if (!line.starts_with(prefix)) throw glyph_error(lineno, "expected 'label <id>'");
  std::string_view rest = line.substr(prefix.size());
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
  int label = -1;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), label);
  if (ec != std::errc{} || ptr != rest.data() + rest.size() || rest.empty() || label < 0 ||
      label > kMaxLabel) {
    throw glyph_error(lineno, "label must be an integer in 0.." + std::to_string(kMaxLabel));
  }
  return label;
}

}  // namespace

Dataset parse_glyphs(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }

  Dataset ds;
  bool have_dims = false;
  std::size_t k = 0;
  while (k < lines.size()) {
    if (blank(lines[k])) {
      ++k;
      continue;
    }
    const std::size_t label_line = k + 1;
    const int label = parse_label_line(lines[k], label_line);
    ++k;
    std::vector<std::uint8_t> cells;
    int cols = -1;
    int rows = 0;
    for (; k < lines.size() && !blank(lines[k]); ++k) {
      const std::string_view row = lines[k];
      if (cols == -1) {
        cols = static_cast<int>(row.size());
      } else if (static_cast<int>(row.size()) != cols) {
        throw glyph_error(k + 1, "ragged row: length " + std::to_string(row.size()) +
                                     ", expected " + std::to_string(cols));
      }
      for (char ch : row) {
        if (ch == '#') {
          cells.push_back(1);
        } else if (ch == '.') {
          cells.push_back(0);
        } else {
          throw glyph_error(k + 1, "foreign character in grid row");
        }
      }
      ++rows;
    }
    if (rows == 0) throw glyph_error(label_line, "record has no grid rows");
    const Dims dims{cols, rows};
    if (!have_dims) {
      ds.dims = dims;
      have_dims = true;
    } else if (dims != ds.dims) {
      throw glyph_error(label_line, "record dims " + to_string(dims) + " differ from " +
                                        to_string(ds.dims));
    }
    ds.items.push_back({ImageGrid(dims, std::move(cells)), label});
    ds.class_count = std::max(ds.class_count, label + 1);
  }
  if (ds.items.empty()) throw Error(ErrorKind::Parse, "glyphs: empty dataset");
  return ds;
}

Dataset load_glyphs(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_glyphs(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string format_grid_rows(const ImageGrid& grid) {
  std::string out;
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) out.push_back(grid.at(c, r) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

std::string format_glyphs(const Dataset& ds) {
  std::string out;
  for (std::size_t k = 0; k < ds.items.size(); ++k) {
    if (k) out.push_back('\n');
    out += "label " + std::to_string(ds.items[k].label) + "\n";
    out += format_grid_rows(ds.items[k].grid);
  }
  return out;
}

// ---------------------------------------------------------------- model

std::string hex_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::Config, "cannot serialize non-finite parameter");
  char buf[64];
  const bool neg = std::signbit(v);
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(v), std::chars_format::hex);
  (void)ec;
  return std::string(neg ? "-0x" : "0x") + std::string(buf, ptr);
}

double parse_hex_double(std::string_view s) {
  const bool neg = s.starts_with('-');
  if (neg) s.remove_prefix(1);
  if (!s.starts_with("0x")) throw Error(ErrorKind::Load, "expected hex float, got '" + std::string(s) + "'");
  s.remove_prefix(2);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw Error(ErrorKind::Load, "malformed hex float");
  }
  return neg ? -v : v;
}

namespace {

ordered_json hex_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(hex_double(x));
  return a;
}

ordered_json block_json(const PairBlock& block) {
  ordered_json j;
  j["pair"] = {block.pair.i, block.pair.j};
  j["kind"] = std::string(to_string(block.kind()));
  if (const auto* m = std::get_if<MetricParams>(&block.params)) {
    j["weights"] = m->weights.w;
  } else if (const auto* p = std::get_if<PerceptronParams>(&block.params)) {
    j["weights"] = hex_array(p->weights);
    j["bias"] = hex_double(p->bias);
    j["decimal"] = {{"weights", p->weights}, {"bias", p->bias}};
  } else {
    const auto& s = std::get<SigmoidParams>(block.params);
    j["hidden_size"] = s.hidden_size;
    j["input_hidden"] = hex_array(s.input_hidden);
    j["hidden_bias"] = hex_array(s.hidden_bias);
    j["hidden_output"] = hex_array(s.hidden_output);
    j["output_bias"] = hex_double(s.output_bias);
    j["decimal"] = {{"input_hidden", s.input_hidden},
                    {"hidden_bias", s.hidden_bias},
                    {"hidden_output", s.hidden_output},
                    {"output_bias", s.output_bias}};
  }
  return j;
}

Error load_error(const std::string& what) { return Error(ErrorKind::Load, "model: " + what); }

const ordered_json& field(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw load_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t int_field(const ordered_json& j, const char* key, std::int64_t lo, std::int64_t hi) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw load_error(std::string("field '") + key + "' must be an integer");
  const auto x = v.get<std::int64_t>();
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
    throw load_error(std::string("field '") + key + "' out of range");
  }
  if (x < lo || x > hi) throw load_error(std::string("field '") + key + "' out of range");
  return x;
}

const ordered_json& array_field(const ordered_json& j, const char* key, std::size_t expected) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw load_error(std::string("field '") + key + "' must be an array");
  if (v.size() != expected) {
    throw load_error(std::string("field '") + key + "' has " + std::to_string(v.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  return v;
}

double hex_value(const ordered_json& v) {
  if (!v.is_string()) throw load_error("real parameters must be hex-float strings");
  return parse_hex_double(v.get_ref<const std::string&>());
}

std::vector<double> hex_vector(const ordered_json& j, const char* key, std::size_t expected) {
  const auto& a = array_field(j, key, expected);
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : a) out.push_back(hex_value(v));
  return out;
}

PairBlock block_from_json(const ordered_json& j, Dims dims) {
  const auto& pair = array_field(j, "pair", 2);
  if (!pair[0].is_number_integer() || !pair[1].is_number_integer()) {
    throw load_error("block pair must be two integers");
  }
  PairBlock block;
  block.pair = {static_cast<int>(std::clamp<std::int64_t>(pair[0].get<std::int64_t>(), -1, 1 << 20)),
                static_cast<int>(std::clamp<std::int64_t>(pair[1].get<std::int64_t>(), -1, 1 << 20))};
  block.dims = dims;
  const auto& kind_v = field(j, "kind");
  if (!kind_v.is_string()) throw load_error("block kind must be a string");
  const std::string& kind = kind_v.get_ref<const std::string&>();
  const auto cells = static_cast<std::size_t>(dims.cell_count());
  if (kind == "metric") {
    const auto& a = array_field(j, "weights", cells);
    metric::WeightGrid w{dims, {}};
    w.w.reserve(cells);
    for (const auto& v : a) {
      if (!v.is_number_integer()) throw load_error("metric weights must be integers");
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw load_error("metric weight out of range");
      }
      w.w.push_back(v.get<std::int64_t>());
    }
    block.params = MetricParams{std::move(w)};
  } else if (kind == "perceptron") {
    PerceptronParams p;
    p.weights = hex_vector(j, "weights", cells);
    p.bias = hex_value(field(j, "bias"));
    block.params = std::move(p);
  } else if (kind == "sigmoid") {
    SigmoidParams s;
    s.hidden_size = static_cast<int>(int_field(j, "hidden_size", 1, 1 << 16));
    const auto hs = static_cast<std::size_t>(s.hidden_size);
    s.input_hidden = hex_vector(j, "input_hidden", hs * cells);
    s.hidden_bias = hex_vector(j, "hidden_bias", hs);
    s.hidden_output = hex_vector(j, "hidden_output", hs);
    s.output_bias = hex_value(field(j, "output_bias"));
    block.params = std::move(s);
  } else {
    throw load_error("unknown block kind '" + kind + "'");
  }
  return block;
}

ImageGrid grid_from_rows(const ordered_json& rows, Dims dims) {
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dims.rows)) {
    throw load_error("sample must have " + std::to_string(dims.rows) + " rows");
  }
  std::vector<std::uint8_t> cells;
  for (const auto& row : rows) {
    if (!row.is_string() || row.get_ref<const std::string&>().size() != static_cast<std::size_t>(dims.cols)) {
      throw load_error("sample row must be a string of " + std::to_string(dims.cols) + " cells");
    }
    for (char ch : row.get_ref<const std::string&>()) {
      if (ch != '#' && ch != '.') throw load_error("sample rows use '#' and '.' only");
      cells.push_back(ch == '#');
    }
  }
  return ImageGrid(dims, std::move(cells));
}

ordered_json grid_rows(const ImageGrid& g) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < g.rows(); ++r) {
    std::string row;
    for (int c = 0; c < g.cols(); ++c) row.push_back(g.at(c, r) ? '#' : '.');
    rows.push_back(row);
  }
  return rows;
}

ModelFile model_from_json_unchecked(const ordered_json& doc) {
  if (!doc.is_object()) throw load_error("document must be a JSON object");
  const auto version = int_field(doc, "format_version", 0, INT32_MAX);
  if (version != kModelFormatVersion) {
    throw load_error("unsupported format_version " + std::to_string(version));
  }
  const auto& dims_j = field(doc, "dims");
  const Dims dims{static_cast<int>(int_field(dims_j, "cols", 1, 4096)),
                  static_cast<int>(int_field(dims_j, "rows", 1, 4096))};

  const auto& topo_j = field(doc, "topology");
  if (!topo_j.is_string()) throw load_error("topology must be a string");
  Topology topology;
  try {
    topology = topology_from_string(topo_j.get_ref<const std::string&>());
  } catch (const Error& e) {
    throw load_error(e.what());
  }

  const auto n = int_field(doc, "unit_count", 2, 100000);
  const auto expected = expected_block_count(static_cast<std::uint64_t>(n), topology);
  const auto& blocks_j = field(doc, "blocks");
  if (!blocks_j.is_array()) throw load_error("blocks must be an array");
  if (blocks_j.size() != expected) {
    throw load_error("block count " + std::to_string(blocks_j.size()) + " violates " +
                     (topology == Topology::Full ? "(N-1)N" : "N(N-1)/2") + " = " +
                     std::to_string(expected) + " for " + std::string(to_string(topology)) +
                     " N=" + std::to_string(n));
  }
  const auto threshold = int_field(doc, "unit_threshold", INT32_MIN, INT32_MAX);
  if (threshold != n - 1) {
    throw load_error("unit_threshold " + std::to_string(threshold) + " violates B = N-1 = " +
                     std::to_string(n - 1));
  }

  const auto& bin_j = field(doc, "binarize_threshold");
  if (!bin_j.is_number()) throw load_error("binarize_threshold must be a number");
  const double bin = bin_j.get<double>();
  if (!(bin >= 0.0 && bin <= 1.0)) throw load_error("binarize_threshold outside [0,1]");

  const auto& groups_j = field(doc, "class_groups");
  if (!groups_j.is_array()) throw load_error("class_groups must be an array");
  ClassGroups groups;
  std::size_t unit_total = 0;
  for (const auto& g : groups_j) {
    const int cls = static_cast<int>(int_field(g, "class", 0, INT32_MAX));
    const auto& units = field(g, "units");
    if (!units.is_array()) throw load_error("class group units must be an array");
    unit_total += units.size();
    if (unit_total > static_cast<std::size_t>(n)) throw load_error("class_groups do not partition units");
    if (groups.contains(cls)) throw load_error("class " + std::to_string(cls) + " grouped twice");
    auto& dst = groups[cls];
    for (const auto& u : units) {
      if (!u.is_number_integer()) throw load_error("unit ids must be integers");
      const auto id = u.get<std::int64_t>();
      if (id < 0 || id >= n) throw load_error("unit id out of range");
      dst.push_back(static_cast<int>(id));
    }
  }
  if (unit_total != static_cast<std::size_t>(n)) {
    throw load_error("class_groups cover " + std::to_string(unit_total) + " units, expected N=" +
                     std::to_string(n));
  }

  std::map<PairKey, PairBlock> blocks;
  for (const auto& bj : blocks_j) {
    PairBlock b = block_from_json(bj, dims);
    const PairKey key = b.pair;
    if (!blocks.emplace(key, std::move(b)).second) {
      throw load_error("duplicate block (" + std::to_string(key.i) + "," + std::to_string(key.j) + ")");
    }
  }

  std::vector<ImageGrid> samples;
  if (doc.contains("samples")) {
    const auto& s = array_field(doc, "samples", static_cast<std::size_t>(n));
    for (const auto& rows : s) samples.push_back(grid_from_rows(rows, dims));
  }

  try {
    return ModelFile{assemble(std::move(blocks), std::move(groups), topology, dims), bin,
                     std::move(samples)};
  } catch (const Error& e) {
    throw load_error(std::string("invalid network: ") + e.what());
  }
}

}  // namespace

std::string serialize_block(const PairBlock& block) { return block_json(block).dump(); }

std::string model_to_json(const ModelFile& model) {
  const Ensemble& e = model.ensemble;
  ordered_json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["dims"] = {{"cols", e.dims().cols}, {"rows", e.dims().rows}};
  doc["topology"] = std::string(to_string(e.topology()));
  doc["unit_count"] = e.unit_count();
  doc["unit_threshold"] = e.unit_threshold();
  doc["binarize_threshold"] = model.binarize_threshold;
  ordered_json groups = ordered_json::array();
  for (const auto& [cls, units] : e.class_groups()) {
    groups.push_back({{"class", cls}, {"units", units}});
  }
  doc["class_groups"] = std::move(groups);
  ordered_json blocks = ordered_json::array();
  for (const auto& [key, block] : e.blocks()) blocks.push_back(block_json(block));
  doc["blocks"] = std::move(blocks);
  if (!model.unit_samples.empty()) {
    ordered_json samples = ordered_json::array();
    for (const auto& s : model.unit_samples) samples.push_back(grid_rows(s));
    doc["samples"] = std::move(samples);
  }
  return doc.dump(1) + "\n";
}

ModelFile model_from_json(std::string_view text) {
  try {
    return model_from_json_unchecked(ordered_json::parse(text.begin(), text.end()));
  } catch (const nlohmann::json::exception& e) {
    throw load_error(std::string("malformed document: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Load) throw;
    throw load_error(e.what());
  }
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
  write_file(path, model_to_json(model));
}

ModelFile load_model(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return model_from_json(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace pairnet::io
