// Wall-clock comparison of the OpenMP kernels against their serial
// references.  Usage: bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "coxlim/hilbert.hpp"
#include "coxlim/instances.hpp"
#include "coxlim/limits.hpp"

using namespace coxlim;

namespace {

double best_ms(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double par, double ser) {
  std::printf("%-34s %10.2f %10.2f %8.2fx\n", name, par, ser, ser / par);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "omp ms", "serial ms", "speedup");

  const CoxeterSystem t237 = instances::triangle_237();
  const CoxeterSystem g2cusp = instances::g2cusp_rank4();
  volatile std::size_t sink = 0;

  row("enumerate_ball (2,3,7) r=24",
      best_ms(repeats, [&] { sink = sink + enumerate_ball(t237, 24).size(); }),
      best_ms(repeats, [&] { sink = sink + enumerate_ball_reference(t237, 24).size(); }));
  row("enumerate_ball rank4 r=9",
      best_ms(repeats, [&] { sink = sink + enumerate_ball(g2cusp, 9).size(); }),
      best_ms(repeats, [&] { sink = sink + enumerate_ball_reference(g2cusp, 9).size(); }));

  const PointSet a = orbit_frontier(t237, 22);
  const PointSet b = orbit_frontier(t237, 21);
  std::printf("  hausdorff sizes %zu x %zu\n", a.size(), b.size());
  volatile double dsink = 0.0;
  row("hausdorff (2,3,7) frontiers",
      best_ms(repeats, [&] { dsink = dsink + hausdorff(a, b); }),
      best_ms(repeats, [&] { dsink = dsink + hausdorff_serial(a, b); }));

  std::mt19937_64 rng(7);
  std::vector<PointPair> pairs;
  for (int i = 0; i < 400000; ++i)
    pairs.push_back({random_interior(g2cusp, rng), random_interior(g2cusp, rng)});
  row("dist_batch rank4 400k pairs",
      best_ms(repeats, [&] { dsink = dsink + dist_batch(g2cusp, pairs)[0]; }),
      best_ms(repeats, [&] { dsink = dsink + dist_batch_serial(g2cusp, pairs)[0]; }));
  return 0;
}
