// Serial reference vs OpenMP kernels: wall time and result equality.
// Usage: pairnet_bench [samples] [inputs] [reps]

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "pairnet/ensemble.hpp"
#include "pairnet/kernels.hpp"

using namespace pairnet;

namespace {

ImageGrid random_grid(Dims dims, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution on(density);
  for (;;) {
    ImageGrid g(dims);
    for (std::size_t p = 0; p < g.size(); ++p) g.set_index(p, on(rng));
    if (g.active_count() > 0) return g;
  }
}

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-16s serial %9.4fs  omp %9.4fs  speedup %5.2fx  %s\n", name, serial, parallel, serial / parallel,
              equal ? "equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int n_samples = argc > 1 ? std::atoi(argv[1]) : 20;
  const int n_inputs = argc > 2 ? std::atoi(argv[2]) : 2000;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
  const Dims dims{28, 28};

  std::mt19937_64 rng(2024);
  std::vector<ImageGrid> samples, inputs;
  for (int k = 0; k < n_samples; ++k) samples.push_back(random_grid(dims, rng, 0.1));
  for (int k = 0; k < n_inputs; ++k) inputs.push_back(random_grid(dims, rng, 0.2));

  std::printf("threads=%d samples=%d inputs=%d grid=%dx%d reps=%d\n", omp_get_max_threads(), n_samples, n_inputs,
              dims.cols, dims.rows, reps);
  bool all_equal = true;

  std::vector<metric::DistanceField> fs, fo;
  const double ts = best_of(reps, [&] { fs = kernels::serial::distance_fields(samples); });
  const double to = best_of(reps, [&] { fo = kernels::omp::distance_fields(samples); });
  report("distance_fields", ts, to, fs == fo);
  all_equal = all_equal && fs == fo;

  std::vector<std::int64_t> ss, so;
  const double ms = best_of(reps, [&] { ss = kernels::serial::score_matrix(fs, inputs); });
  const double mo = best_of(reps, [&] { so = kernels::omp::score_matrix(fs, inputs); });
  report("score_matrix", ms, mo, ss == so);
  all_equal = all_equal && ss == so;

  const Ensemble e = build_metric_ensemble(samples, {}, Topology::Compressed);
  std::vector<Decision> ps, po;
  const double ps_t = best_of(reps, [&] { ps = kernels::serial::predict_batch(e, inputs); });
  const double po_t = best_of(reps, [&] { po = kernels::omp::predict_batch(e, inputs); });
  report("predict_batch", ps_t, po_t, ps == po);
  all_equal = all_equal && ps == po;

  return all_equal ? 0 : 1;
}
