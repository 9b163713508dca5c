// Compares the serial and parallel residue-series kernels on a synthetic
// many-pole expansion: checks bitwise agreement, then times both.
#include "entangledyn/series.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace entangledyn;

static double time_ms(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

int main() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> freq(-50.0, 50.0);
  std::uniform_real_distribution<double> amp(0.0, 1.0);

  const int npoles = 4096;
  std::vector<Complex> roots(npoles), weights(npoles);
  for (int j = 0; j < npoles; ++j) {
    roots[j] = Complex(-1e-3 * amp(rng), freq(rng));
    weights[j] = Complex(amp(rng), amp(rng)) / static_cast<double>(npoles);
  }
  const std::vector<double> times = series::linspace(0.0, 20.0, 20000);

  std::vector<Complex> a, b;
  const double t_serial =
      time_ms([&] { a = series::u_on_grid_serial(roots, weights, times); }, 3);
  const double t_parallel =
      time_ms([&] { b = series::u_on_grid(roots, weights, times); }, 3);

  bool identical = a.size() == b.size();
  for (std::size_t i = 0; identical && i < a.size(); ++i)
    identical = a[i] == b[i];

  std::printf("poles=%d samples=%zu\n", npoles, times.size());
  std::printf("serial   %10.2f ms\n", t_serial);
  std::printf("parallel %10.2f ms  (speedup %.2fx)\n", t_parallel,
              t_serial / t_parallel);
  std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
