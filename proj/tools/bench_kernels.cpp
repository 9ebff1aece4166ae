// Timing comparison of the serial reference kernels against the OpenMP
// versions on synthetic data of increasing size. Not part of the test suite;
// build and run by hand:
//   cmake --build build --target bench_kernels && ./build/tools/bench_kernels

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qglr/harness.hpp"
#include "qglr/lrmodel.hpp"

namespace {

using namespace qglr;
using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (dt < best) best = dt;
  }
  return best;
}

void bench_case(std::size_t n, std::size_t d) {
  SyntheticSpec spec;
  spec.n = n;
  spec.d = d;
  spec.seed = 7;
  const LabeledData data = make_synthetic_binary(spec);
  const BinaryLabels y = data.binary();
  Vector beta(data.dataset.param_count(), 0.05);

  const double g_serial = time_best_of(5, [&] {
    volatile double sink = gradient_binary(data.dataset, y, beta, Exec::serial)[0];
    (void)sink;
  });
  const double g_omp = time_best_of(5, [&] {
    volatile double sink = gradient_binary(data.dataset, y, beta, Exec::omp)[0];
    (void)sink;
  });
  const double h_serial = time_best_of(3, [&] {
    volatile double sink = hessian_binary(data.dataset, y, beta, Exec::serial)(0, 0);
    (void)sink;
  });
  const double h_omp = time_best_of(3, [&] {
    volatile double sink = hessian_binary(data.dataset, y, beta, Exec::omp)(0, 0);
    (void)sink;
  });

  std::printf("n=%-7zu d=%-4zu gradient %9.3f us | %9.3f us  (x%.2f)   "
              "hessian %9.3f us | %9.3f us  (x%.2f)\n",
              n, d, g_serial * 1e6, g_omp * 1e6, g_serial / g_omp,
              h_serial * 1e6, h_omp * 1e6, h_serial / h_omp);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp; both columns run the serial path\n");
#endif
  std::printf("%42s serial | omp\n", "");
  bench_case(1000, 16);
  bench_case(10000, 16);
  bench_case(10000, 64);
  bench_case(50000, 64);
  bench_case(100000, 32);
  return 0;
}
