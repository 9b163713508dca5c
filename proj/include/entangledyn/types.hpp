// types.hpp -- shared aliases and error types
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace entangledyn {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

// one sample of a time-indexed observable
struct SeriesPoint {
    double t;
    double value;
};

// thrown when an input violates a documented precondition
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// thrown when an iteration fails to converge or an evaluation point is
// numerically unusable (e.g. on a branch cut, nearly degenerate roots)
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace entangledyn
