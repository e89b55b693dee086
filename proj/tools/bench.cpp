// Benchmark: serial reference kernels vs the OpenMP ones, plus a consistency
// check that both produce the same numbers. Run with no arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ces/batch.hpp"
#include "ces/measure.hpp"
#include "ces/model.hpp"

using namespace ces;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

void report(const char* name, double serial, double parallel, double max_dev) {
  std::printf("%-28s %10.4f s %10.4f s %7.2fx   max|dev| = %.2e\n", name,
              serial, parallel, serial / parallel, max_dev);
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled: parallel kernels run their serial path\n");
#endif
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  const model::ModelParams p(1.0, 0.5, Phase::broken);

  // eigenfunction sampling: Laguerre + exp per point
  {
    const Grid g(1e-4, 18.0, 200001);
    std::vector<double> serial_vals, parallel_vals;
    const double ts = time_best_of(
        3, [&] { serial_vals = batch::psi_plus_samples_serial(p, 18, g); });
    const double tp = time_best_of(
        3, [&] { parallel_vals = batch::psi_plus_samples(p, 18, g); });
    double dev = 0.0;
    for (std::size_t i = 0; i < serial_vals.size(); ++i) {
      dev = std::max(dev, std::abs(serial_vals[i] - parallel_vals[i]));
    }
    report("psi+ sampling (200k pts)", ts, tp, dev);
  }

  // Meijer-G sampling: one contour, many z
  {
    const auto b = measure::sigma_b(p);
    const Accuracy acc;
    std::vector<double> zs(2048);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      zs[i] = 1e-6 + 6.0 * static_cast<double>(i) / zs.size();
    }
    std::vector<double> serial_vals, parallel_vals;
    const double ts = time_best_of(
        3, [&] { serial_vals = batch::meijer_samples_serial(b, zs, acc); });
    const double tp = time_best_of(
        3, [&] { parallel_vals = batch::meijer_samples(b, zs, acc); });
    double dev = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      dev = std::max(dev, std::abs(serial_vals[i] - parallel_vals[i]));
    }
    report("Meijer-G sampling (2048 z)", ts, tp, dev);
  }

  // moment quadrature: 8000-panel Simpson over the contour evaluator
  {
    const auto b = measure::sigma_b(p);
    const Accuracy acc;
    double ms = 0.0, mp = 0.0;
    const double ts =
        time_best_of(2, [&] { ms = batch::meijer_moment_serial(b, 2, acc); });
    const double tp =
        time_best_of(2, [&] { mp = batch::meijer_moment(b, 2, acc); });
    report("moment quadrature (n=2)", ts, tp, std::abs(ms - mp));
  }

  // end-to-end density profile (the parallel path is the default)
  {
    const auto t0 = clock_type::now();
    const auto prof = measure::radial_density_profile(p, 60.0, 2000);
    std::printf("%-28s %23.4f s   (sigma integral %.12f)\n",
                "density profile (2000 pts)", seconds_since(t0),
                prof.sigma_integral);
  }
  return 0;
}
