#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "pairnet/grid.hpp"
#include "pairnet/pair_block.hpp"

namespace pairnet {

enum class Topology { Full, Compressed };

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view s);

/// Block count for n_units: (N-1)N for Full, N(N-1)/2 for Compressed.
std::uint64_t expected_block_count(std::uint64_t n_units, Topology variant);
/// Blocks added when going from N to N+1 units: 2N for Full, N for Compressed.
std::uint64_t growth_delta(std::uint64_t n_units_before, Topology variant);

/// Pair keys a topology requires for n units, in ascending order.
std::vector<PairKey> required_pairs(int n_units, Topology variant);
/// Pair keys that join a new unit (index n_before) to the existing ones.
std::vector<PairKey> growth_pairs(int n_units_before, Topology variant);

/// Outcomes of every pairwise comparison. wins(k, j) == 1 means unit k beat
/// unit j. Off-diagonal entries start unset; the diagonal is unused.
class BitMatrix {
 public:
  explicit BitMatrix(int n) : n_(n), bits_(static_cast<std::size_t>(n) * n, kUnset) {}

  int size() const { return n_; }
  void set(int k, int j, int bit) { bits_[idx(k, j)] = static_cast<std::int8_t>(bit != 0); }
  void clear(int k, int j) { bits_[idx(k, j)] = kUnset; }
  bool is_set(int k, int j) const { return bits_[idx(k, j)] != kUnset; }
  int get(int k, int j) const { return bits_[idx(k, j)]; }
  bool complete() const;

 private:
  static constexpr std::int8_t kUnset = -1;
  std::size_t idx(int k, int j) const { return static_cast<std::size_t>(k) * n_ + j; }

  int n_;
  std::vector<std::int8_t> bits_;
};

enum class Outcome { Class, NoDecision, Ambiguous };

struct Decision {
  Outcome outcome = Outcome::NoDecision;
  int class_id = -1;               // set for Outcome::Class
  std::vector<int> classes;        // all active classes (one for Class, several for Ambiguous)
  std::vector<int> votes;          // per-unit win counts
  std::vector<int> fired_units;    // ascending

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct MaxVoteDecision {
  int class_id = -1;
  int unit = -1;
  bool tie = false;
  std::vector<int> votes;
};

/// Class id -> second-layer units merged by that class's third-layer neuron.
using ClassGroups = std::map<int, std::vector<int>>;

ClassGroups identity_groups(int n_units);

/// Wired and validated network. Immutable after assembly.
class Ensemble {
 public:
  Topology topology() const { return topology_; }
  int unit_count() const { return unit_count_; }
  int unit_threshold() const { return unit_count_ - 1; }
  Dims dims() const { return dims_; }
  const std::map<PairKey, PairBlock>& blocks() const { return blocks_; }
  const ClassGroups& class_groups() const { return groups_; }
  int class_of_unit(int unit) const { return unit_class_[static_cast<std::size_t>(unit)]; }

  friend Ensemble assemble(std::map<PairKey, PairBlock> blocks, ClassGroups groups,
                           Topology variant, Dims dims);

 private:
  Ensemble() = default;

  Topology topology_ = Topology::Compressed;
  int unit_count_ = 0;
  Dims dims_;
  std::map<PairKey, PairBlock> blocks_;
  ClassGroups groups_;
  std::vector<int> unit_class_;
};

// Throws Wiring naming missing/surplus pairs, Dimension on mismatched block
// dims, Config when groups do not partition 0..N-1 or N < 2.
Ensemble assemble(std::map<PairKey, PairBlock> blocks, ClassGroups groups, Topology variant,
                  Dims dims);

BitMatrix first_layer_bits(const Ensemble& e, const ImageGrid& input);
/// Units whose wins reach the threshold N-1, ascending.
std::vector<int> second_layer(const Ensemble& e, const BitMatrix& b);
/// OR-merge of fired units per class group.
std::map<int, int> third_layer(const Ensemble& e, const std::vector<int>& fired);
std::vector<int> unit_votes(const BitMatrix& b);

Decision predict(const Ensemble& e, const ImageGrid& input);
/// Highest vote count wins; ties go to the lowest unit index and set tie.
MaxVoteDecision predict_max_vote(const Ensemble& e, const ImageGrid& input);

/// Grows the ensemble by one unit assigned to class_id. new_blocks must hold
/// exactly the growth_pairs of the current size. Existing blocks are carried
/// over untouched.
Ensemble add_class(const Ensemble& e, std::map<PairKey, PairBlock> new_blocks, int class_id);

/// Metric ensemble with one unit per sample, in order. unit_classes gives each
/// sample's class; empty means one class per sample.
Ensemble build_metric_ensemble(const std::vector<ImageGrid>& samples,
                               const std::vector<int>& unit_classes, Topology variant);

}  // namespace pairnet
