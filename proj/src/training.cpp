#include "pairnet/training.hpp"

#include <exception>
#include <optional>

#include "pairnet/error.hpp"

namespace pairnet::training {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string key_name(PairKey key) {
  return "(" + std::to_string(key.i) + "," + std::to_string(key.j) + ")";
}

}  // namespace

std::uint64_t block_seed(std::uint64_t seed, PairKey key, std::uint64_t stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint32_t>(key.i));
  h = splitmix64(h ^ static_cast<std::uint32_t>(key.j));
  return splitmix64(h ^ stream);
}

UnitExamples examples_by_label(const Dataset& ds) {
  UnitExamples out;
  for (const auto& item : ds.items) out[item.label].push_back(item.grid);
  return out;
}

std::map<PairKey, TrainResult> train_blocks(const std::vector<PairKey>& keys,
                                            const UnitExamples& examples, Dims dims,
                                            const PairwiseOptions& opts) {
  static const std::vector<ImageGrid> kNone;
  auto of = [&](int unit) -> const std::vector<ImageGrid>& {
    const auto it = examples.find(unit);
    return it == examples.end() ? kNone : it->second;
  };
  for (const auto& key : keys) {
    if (of(key.i).empty() || of(key.j).empty()) {
      throw Error(ErrorKind::InsufficientData,
                  "block " + key_name(key) + " needs examples of units " + std::to_string(key.i) +
                      " and " + std::to_string(key.j));
    }
  }

  std::vector<std::optional<TrainResult>> results(keys.size());
  std::vector<std::exception_ptr> failures(keys.size());
  const auto n = static_cast<std::int64_t>(keys.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const PairKey key = keys[static_cast<std::size_t>(k)];
    try {
      TrainConfig cfg = opts.config;
      cfg.init_seed = block_seed(opts.seed, key, 0);
      cfg.shuffle_seed = block_seed(opts.seed, key, 1);
      const PairBlock init =
          init_block(opts.kind, key, dims, opts.hidden_size, cfg.init_seed, cfg.init_scale);
      results[static_cast<std::size_t>(k)] = train_block(init, of(key.i), of(key.j), cfg);
    } catch (...) {
      failures[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::map<PairKey, TrainResult> out;
  for (std::size_t k = 0; k < keys.size(); ++k) out.emplace(keys[k], std::move(*results[k]));
  return out;
}

TrainedEnsemble train_pairwise(const Dataset& ds, const PairwiseOptions& opts) {
  if (ds.class_count < 2) throw Error(ErrorKind::Config, "need at least 2 classes");
  const UnitExamples examples = examples_by_label(ds);
  for (int k = 0; k < ds.class_count; ++k) {
    if (!examples.contains(k)) {
      throw Error(ErrorKind::InsufficientData, "class " + std::to_string(k) + " has no examples");
    }
  }
  auto trained = train_blocks(required_pairs(ds.class_count, opts.topology), examples, ds.dims, opts);
  std::map<PairKey, PairBlock> blocks;
  std::vector<BlockReport> reports;
  for (auto& [key, result] : trained) {
    reports.push_back({key, result.report});
    blocks.emplace(key, std::move(result.block));
  }
  return {assemble(std::move(blocks), identity_groups(ds.class_count), opts.topology, ds.dims),
          std::move(reports)};
}

}  // namespace pairnet::training
