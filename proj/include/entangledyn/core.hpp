// core.hpp -- atomic states, truncated atom+field states, entanglement measures
#pragma once

#include "types.hpp"

namespace entangledyn::core {

// Pure/mixed qubit state in spherical parametrisation.  theta is the polar
// angle from the excited state |e>, phi the azimuth, r the Bloch radius.
struct BlochVector {
    double r = 1.0;
    double theta = 0.0;
    double phi = 0.0;

    BlochVector() = default;
    BlochVector(double r_, double theta_, double phi_);
};

// 2x2 atomic density matrix, basis {|e>, |g>}.  Construction validates
// hermiticity, unit trace and positivity.
class DensityOperator {
  public:
    explicit DensityOperator(Matrix rho);
    const Matrix& matrix() const { return rho_; }

  private:
    Matrix rho_;
};

// Joint atom+field state truncated to the vacuum and M one-photon levels:
// basis {|e>, |g>} (x) {|vac>, |1_1>, ..., |1_M>}, dimension 2(M+1).
class TruncatedState {
  public:
    TruncatedState(int mode_count, Matrix chi);
    int mode_count() const { return modes_; }
    int field_dim() const { return modes_ + 1; }
    const Matrix& matrix() const { return chi_; }

    // flat index of |a> (x) |f>, a = 0 (excited) or 1 (ground), f in [0, M]
    int index(int a, int f) const { return a * (modes_ + 1) + f; }

  private:
    int modes_;
    Matrix chi_;
};

// Probability spectrum of a reduced state (eigenvalue pair for a qubit).
struct Spectrum {
    std::vector<double> p;
};

DensityOperator bloch_to_density(const BlochVector& b);

// Transpose on the field factor only.
Matrix partial_transpose(const TruncatedState& state);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& herm);

// log2 of the trace norm of the field-transposed state.
double log_negativity(const TruncatedState& state);

// Reduced atomic state: trace over the field factor.
DensityOperator trace_out_field(const TruncatedState& state);

// von Neumann entropy in bits of a density matrix.
double eoe(const DensityOperator& rho);

// Eigenvalue pair of the reduced atomic state of an initially pure
// (r = 1) atom after the excited-state amplitude has evolved to u.
Spectrum reduced_eigs_from_u(double u_abs, double theta);

// Entanglement measures of a pure joint state from its reduced spectrum.
double eoe_from_spectrum(const Spectrum& s);
double ln_pure_from_spectrum(const Spectrum& s);

// Closed-form log-negativity of the pure-state family parametrised by u.
double ln_from_u(double u_abs, double theta);

} // namespace entangledyn::core
