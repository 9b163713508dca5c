// series.hpp -- grid evaluation of pole/residue expansions
//
// The parallel kernel is the production path; the serial twin exists so the
// tests (and the bench tool) can compare them directly.
#pragma once

#include "types.hpp"

namespace entangledyn::series {

// u(t_i) = sum_j weights[j] exp(roots[j] t_i)
std::vector<Complex> u_on_grid_serial(const std::vector<Complex>& roots,
                                      const std::vector<Complex>& weights,
                                      const std::vector<double>& times);

std::vector<Complex> u_on_grid(const std::vector<Complex>& roots,
                               const std::vector<Complex>& weights,
                               const std::vector<double>& times);

std::vector<double> linspace(double start, double end, int samples);

} // namespace entangledyn::series
