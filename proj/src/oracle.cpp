#include "pairnet/oracle.hpp"

#include <algorithm>
#include <limits>

#include "pairnet/error.hpp"

namespace pairnet::oracle {

OracleVerdict metric_oracle(const std::vector<ImageGrid>& samples, const ImageGrid& input) {
  if (samples.empty()) throw Error(ErrorKind::Config, "metric oracle needs samples");
  const int n = static_cast<int>(samples.size());
  OracleVerdict v;
  v.scores.assign(samples.size(), 0);
  for (int k = 0; k < n; ++k) {
    const ImageGrid& s = samples[static_cast<std::size_t>(k)];
    if (s.dims() != input.dims()) throw Error(ErrorKind::Dimension, "metric oracle: dims mismatch");
    bool any = false;
    for (std::size_t p = 0; p < s.size(); ++p) any = any || s[p];
    if (!any) throw Error(ErrorKind::DegenerateSample, "metric oracle: all-zero sample");

    std::int64_t score = 0;
    for (int pr = 0; pr < input.rows(); ++pr) {
      for (int pc = 0; pc < input.cols(); ++pc) {
        if (!input.at(pc, pr)) continue;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int ar = 0; ar < s.rows(); ++ar) {
          for (int ac = 0; ac < s.cols(); ++ac) {
            if (!s.at(ac, ar)) continue;
            const std::int64_t d = std::int64_t{ac - pc} * (ac - pc) + std::int64_t{ar - pr} * (ar - pr);
            best = std::min(best, d);
          }
        }
        score += best;
      }
    }
    v.scores[static_cast<std::size_t>(k)] = score;
  }

  Decision& d = v.decision;
  d.votes.assign(samples.size(), 0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j != k && v.scores[static_cast<std::size_t>(k)] < v.scores[static_cast<std::size_t>(j)]) {
        ++d.votes[static_cast<std::size_t>(k)];
      }
    }
  }
  const auto best = std::min_element(v.scores.begin(), v.scores.end());
  if (std::count(v.scores.begin(), v.scores.end(), *best) == 1) {
    const int k = static_cast<int>(best - v.scores.begin());
    d.outcome = Outcome::Class;
    d.class_id = k;
    d.classes = {k};
    d.fired_units = {k};
  } else {
    d.outcome = Outcome::NoDecision;
  }
  return v;
}

OracleVerdict tournament_oracle(const BitMatrix& b, int n) {
  if (b.size() != n) throw Error(ErrorKind::Wiring, "tournament oracle: matrix size mismatch");
  OracleVerdict v;
  v.scores.assign(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      if (!b.is_set(k, j)) throw Error(ErrorKind::Wiring, "tournament oracle: incomplete matrix");
      if (b.get(k, j) == 1) ++v.scores[static_cast<std::size_t>(k)];
    }
  }
  Decision& d = v.decision;
  for (int k = 0; k < n; ++k) {
    d.votes.push_back(static_cast<int>(v.scores[static_cast<std::size_t>(k)]));
    if (v.scores[static_cast<std::size_t>(k)] >= n - 1) d.fired_units.push_back(k);
  }
  d.classes = d.fired_units;
  if (d.fired_units.size() == 1) {
    d.outcome = Outcome::Class;
    d.class_id = d.fired_units.front();
  } else {
    d.outcome = d.fired_units.empty() ? Outcome::NoDecision : Outcome::Ambiguous;
  }
  return v;
}

namespace {

std::int64_t score(const LinearWitness& w, const ImageGrid& x) {
  std::int64_t s = w.bias;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p]) s += w.weights[p];
  }
  return s;
}

}  // namespace

std::int64_t min_margin(const LinearWitness& w, std::span<const ImageGrid> pos,
                        std::span<const ImageGrid> neg) {
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (const auto& x : pos) m = std::min(m, score(w, x));
  for (const auto& x : neg) m = std::min(m, -score(w, x));
  return m;
}

std::optional<LinearWitness> exhaustive_separability(std::span<const ImageGrid> pos,
                                                     std::span<const ImageGrid> neg, int bound) {
  if (pos.empty() || neg.empty()) return std::nullopt;
  const std::size_t cells = pos.front().size();
  if (cells > 6) throw Error(ErrorKind::Config, "exhaustive separability is for tiny grids only");
  const std::int64_t bias_bound = std::int64_t{bound} * static_cast<std::int64_t>(cells + 1);

  LinearWitness w;
  w.weights.assign(cells, -bound);
  for (;;) {
    for (w.bias = -bias_bound; w.bias <= bias_bound; ++w.bias) {
      const std::int64_t m = min_margin(w, pos, neg);
      if (m > 0) {
        w.margin = m;
        return w;
      }
    }
    // odometer increment over the weight vector
    std::size_t k = 0;
    while (k < cells && w.weights[k] == bound) w.weights[k++] = -bound;
    if (k == cells) break;
    ++w.weights[k];
  }
  return std::nullopt;
}

std::optional<LinearWitness> prototype_separability(std::span<const ImageGrid> pos,
                                                    std::span<const ImageGrid> neg) {
  if (pos.empty() || neg.empty()) return std::nullopt;
  const std::size_t cells = pos.front().size();
  auto majority = [cells](std::span<const ImageGrid> xs) {
    std::vector<int> proto(cells, 0);
    for (std::size_t p = 0; p < cells; ++p) {
      std::size_t on = 0;
      for (const auto& x : xs) on += x[p];
      proto[p] = 2 * on > xs.size() ? 1 : 0;
    }
    return proto;
  };
  const auto a = majority(pos);
  const auto b = majority(neg);
  // hamming(x, b) - hamming(x, a) = 2 x.(a - b) + |b| - |a|, positive when x is nearer a.
  LinearWitness w;
  w.weights.resize(cells);
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
  for (std::size_t p = 0; p < cells; ++p) {
    w.weights[p] = 2 * (a[p] - b[p]);
    size_a += a[p];
    size_b += b[p];
  }
  w.bias = size_b - size_a;
  w.margin = min_margin(w, pos, neg);
  if (w.margin <= 0) return std::nullopt;
  return w;
}

}  // namespace pairnet::oracle
