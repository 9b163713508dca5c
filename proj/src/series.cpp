#include "entangledyn/series.hpp"

#include <stdexcept>

namespace entangledyn::series {

static void check_shapes(const std::vector<Complex>& roots,
                         const std::vector<Complex>& weights) {
  if (roots.size() != weights.size())
    throw ValidationError("series: roots/weights size mismatch");
  if (roots.empty()) throw ValidationError("series: empty expansion");
}

std::vector<Complex> u_on_grid_serial(const std::vector<Complex>& roots,
                                      const std::vector<Complex>& weights,
                                      const std::vector<double>& times) {
  check_shapes(roots, weights);
  std::vector<Complex> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j)
      acc += weights[j] * std::exp(roots[j] * times[i]);
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> u_on_grid(const std::vector<Complex>& roots,
                               const std::vector<Complex>& weights,
                               const std::vector<double>& times) {
  check_shapes(roots, weights);
  std::vector<Complex> out(times.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(times.size());
  // grid points are independent, so the parallel result is bitwise equal to
  // the serial one
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j)
      acc += weights[j] * std::exp(roots[j] * times[i]);
    out[i] = acc;
  }
  return out;
}

std::vector<double> linspace(double start, double end, int samples) {
  if (samples < 2) throw ValidationError("linspace: need at least 2 samples");
  if (!(end > start)) throw ValidationError("linspace: end must exceed start");
  std::vector<double> t(samples);
  const double dt = (end - start) / (samples - 1);
  for (int i = 0; i < samples; ++i) t[i] = start + dt * i;
  t.back() = end;
  return t;
}

} // namespace entangledyn::series
