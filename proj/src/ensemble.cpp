#include "pairnet/ensemble.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pairnet/error.hpp"
#include "pairnet/kernels.hpp"

namespace pairnet {

std::string_view to_string(Topology t) {
  return t == Topology::Full ? "full" : "compressed";
}

Topology topology_from_string(std::string_view s) {
  if (s == "full") return Topology::Full;
  if (s == "compressed") return Topology::Compressed;
  throw Error(ErrorKind::Config, "unknown topology '" + std::string(s) + "'");
}

std::uint64_t expected_block_count(std::uint64_t n, Topology variant) {
  if (n < 2) throw Error(ErrorKind::Config, "a pairwise network needs at least 2 units");
  return variant == Topology::Full ? (n - 1) * n : n * (n - 1) / 2;
}

std::uint64_t growth_delta(std::uint64_t n, Topology variant) {
  if (n < 2) throw Error(ErrorKind::Config, "a pairwise network needs at least 2 units");
  return variant == Topology::Full ? 2 * n : n;
}

std::vector<PairKey> required_pairs(int n, Topology variant) {
  std::vector<PairKey> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (variant == Topology::Compressed && j < i) continue;
      out.push_back({i, j});
    }
  }
  return out;
}

std::vector<PairKey> growth_pairs(int n_before, Topology variant) {
  std::vector<PairKey> out;
  for (int k = 0; k < n_before; ++k) out.push_back({k, n_before});
  if (variant == Topology::Full) {
    for (int k = 0; k < n_before; ++k) out.push_back({n_before, k});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool BitMatrix::complete() const {
  for (int k = 0; k < n_; ++k) {
    for (int j = 0; j < n_; ++j) {
      if (k != j && !is_set(k, j)) return false;
    }
  }
  return true;
}

ClassGroups identity_groups(int n_units) {
  ClassGroups g;
  for (int k = 0; k < n_units; ++k) g[k] = {k};
  return g;
}

namespace {

std::string pair_list(const std::vector<PairKey>& pairs) {
  std::ostringstream os;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k) os << ' ';
    os << '(' << pairs[k].i << ',' << pairs[k].j << ')';
  }
  return os.str();
}

}  // namespace

Ensemble assemble(std::map<PairKey, PairBlock> blocks, ClassGroups groups, Topology variant,
                  Dims dims) {
  int n = 0;
  for (const auto& [cls, units] : groups) n += static_cast<int>(units.size());
  if (n < 2) throw Error(ErrorKind::Config, "a pairwise network needs at least 2 units");

  std::vector<int> unit_class(static_cast<std::size_t>(n), -1);
  for (auto& [cls, units] : groups) {
    if (units.empty()) {
      throw Error(ErrorKind::Config, "class " + std::to_string(cls) + " has no units");
    }
    std::sort(units.begin(), units.end());
    for (int u : units) {
      if (u < 0 || u >= n || unit_class[static_cast<std::size_t>(u)] != -1) {
        throw Error(ErrorKind::Config, "class groups must partition units 0.." +
                                           std::to_string(n - 1));
      }
      unit_class[static_cast<std::size_t>(u)] = cls;
    }
  }

  const auto required = required_pairs(n, variant);
  std::vector<PairKey> missing;
  std::vector<PairKey> surplus;
  const std::set<PairKey> required_set(required.begin(), required.end());
  for (const auto& key : required) {
    if (!blocks.contains(key)) missing.push_back(key);
  }
  for (const auto& [key, block] : blocks) {
    if (!required_set.contains(key)) surplus.push_back(key);
  }
  if (!missing.empty() || !surplus.empty()) {
    std::string msg = std::string(to_string(variant)) + " topology with N=" + std::to_string(n) +
                      " needs " + std::to_string(required.size()) + " blocks";
    if (!missing.empty()) msg += "; missing " + pair_list(missing);
    if (!surplus.empty()) msg += "; surplus " + pair_list(surplus);
    throw Error(ErrorKind::Wiring, msg);
  }
  for (const auto& [key, block] : blocks) {
    if (block.pair != key) {
      throw Error(ErrorKind::Wiring, "block stored under " + pair_list({key}) + " is wired as " +
                                         pair_list({block.pair}));
    }
    if (block.dims != dims) {
      throw Error(ErrorKind::Dimension, "block " + pair_list({key}) + " has dims " +
                                            to_string(block.dims) + ", network " + to_string(dims));
    }
  }

  Ensemble e;
  e.topology_ = variant;
  e.unit_count_ = n;
  e.dims_ = dims;
  e.blocks_ = std::move(blocks);
  e.groups_ = std::move(groups);
  e.unit_class_ = std::move(unit_class);
  return e;
}

BitMatrix first_layer_bits(const Ensemble& e, const ImageGrid& input) {
  if (input.dims() != e.dims()) {
    throw Error(ErrorKind::Dimension, "input dims " + to_string(input.dims()) + ", network " +
                                          to_string(e.dims()));
  }
  BitMatrix b(e.unit_count());
  for (const auto& [key, block] : e.blocks()) {
    const int y = block_bit(block, input);
    b.set(key.i, key.j, y);
    if (e.topology() == Topology::Compressed) b.set(key.j, key.i, 1 - y);
  }
  return b;
}

std::vector<int> unit_votes(const BitMatrix& b) {
  std::vector<int> votes(static_cast<std::size_t>(b.size()), 0);
  for (int k = 0; k < b.size(); ++k) {
    for (int j = 0; j < b.size(); ++j) {
      if (k != j && b.is_set(k, j)) votes[static_cast<std::size_t>(k)] += b.get(k, j);
    }
  }
  return votes;
}

std::vector<int> second_layer(const Ensemble& e, const BitMatrix& b) {
  if (b.size() != e.unit_count() || !b.complete()) {
    throw Error(ErrorKind::Wiring, "second layer needs a complete " +
                                       std::to_string(e.unit_count()) + "-unit comparison matrix");
  }
  const auto votes = unit_votes(b);
  std::vector<int> fired;
  for (int k = 0; k < b.size(); ++k) {
    if (votes[static_cast<std::size_t>(k)] >= e.unit_threshold()) fired.push_back(k);
  }
  return fired;
}

std::map<int, int> third_layer(const Ensemble& e, const std::vector<int>& fired) {
  std::map<int, int> out;
  for (const auto& [cls, units] : e.class_groups()) {
    int sum = 0;
    for (int u : units) sum += std::count(fired.begin(), fired.end(), u) > 0 ? 1 : 0;
    out[cls] = sum > 0 ? 1 : 0;
  }
  return out;
}

Decision predict(const Ensemble& e, const ImageGrid& input) {
  const BitMatrix b = first_layer_bits(e, input);
  Decision d;
  d.votes = unit_votes(b);
  d.fired_units = second_layer(e, b);
  for (const auto& [cls, bit] : third_layer(e, d.fired_units)) {
    if (bit) d.classes.push_back(cls);
  }
  if (d.classes.empty()) {
    d.outcome = Outcome::NoDecision;
  } else if (d.classes.size() == 1) {
    d.outcome = Outcome::Class;
    d.class_id = d.classes.front();
  } else {
    d.outcome = Outcome::Ambiguous;
  }
  return d;
}

MaxVoteDecision predict_max_vote(const Ensemble& e, const ImageGrid& input) {
  MaxVoteDecision d;
  d.votes = unit_votes(first_layer_bits(e, input));
  const auto best = std::max_element(d.votes.begin(), d.votes.end());
  d.unit = static_cast<int>(best - d.votes.begin());
  d.tie = std::count(d.votes.begin(), d.votes.end(), *best) > 1;
  d.class_id = e.class_of_unit(d.unit);
  return d;
}

Ensemble add_class(const Ensemble& e, std::map<PairKey, PairBlock> new_blocks, int class_id) {
  const int n = e.unit_count();
  const auto wanted = growth_pairs(n, e.topology());
  std::vector<PairKey> missing;
  std::vector<PairKey> surplus;
  for (const auto& key : wanted) {
    if (!new_blocks.contains(key)) missing.push_back(key);
  }
  for (const auto& [key, block] : new_blocks) {
    if (!std::binary_search(wanted.begin(), wanted.end(), key)) surplus.push_back(key);
  }
  if (!missing.empty() || !surplus.empty()) {
    std::string msg = "adding unit " + std::to_string(n) + " needs " +
                      std::to_string(wanted.size()) + " new blocks";
    if (!missing.empty()) msg += "; missing " + pair_list(missing);
    if (!surplus.empty()) msg += "; surplus " + pair_list(surplus);
    throw Error(ErrorKind::Growth, msg);
  }
  for (const auto& [key, block] : new_blocks) {
    if (block.dims != e.dims()) {
      throw Error(ErrorKind::Dimension, "new block " + pair_list({key}) + " has dims " +
                                            to_string(block.dims) + ", network " +
                                            to_string(e.dims()));
    }
  }
  auto blocks = e.blocks();
  blocks.merge(new_blocks);
  auto groups = e.class_groups();
  groups[class_id].push_back(n);
  return assemble(std::move(blocks), std::move(groups), e.topology(), e.dims());
}

Ensemble build_metric_ensemble(const std::vector<ImageGrid>& samples,
                               const std::vector<int>& unit_classes, Topology variant) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw Error(ErrorKind::Config, "a metric network needs at least 2 samples");
  if (!unit_classes.empty() && unit_classes.size() != samples.size()) {
    throw Error(ErrorKind::Config, "one class id per sample required");
  }
  const Dims dims = samples.front().dims();
  for (const auto& s : samples) {
    if (s.dims() != dims) throw Error(ErrorKind::Dimension, "samples must share dims");
  }
  const auto fields = kernels::omp::distance_fields(samples);
  std::map<PairKey, PairBlock> blocks;
  for (const auto& key : required_pairs(n, variant)) {
    blocks.emplace(key, make_metric_block(key, fields[static_cast<std::size_t>(key.i)],
                                          fields[static_cast<std::size_t>(key.j)]));
  }
  ClassGroups groups;
  for (int u = 0; u < n; ++u) {
    groups[unit_classes.empty() ? u : unit_classes[static_cast<std::size_t>(u)]].push_back(u);
  }
  return assemble(std::move(blocks), std::move(groups), variant, dims);
}

}  // namespace pairnet
