// cavity.hpp -- planar-cavity continuum: memory kernel, transform, dominant poles
#pragma once

#include "core.hpp"
#include "types.hpp"

namespace entangledyn::cavity {

// Atom at frequency omega0 in a planar cavity of length L (c = 1), coupling
// strength lambda, high-frequency regulator epsilon (an inverse frequency).
struct CavityParams {
    double lambda = 0.05;
    double length = 10.0;
    double epsilon = 1e-3;
    double omega0 = 1.0;

    CavityParams() = default;
    CavityParams(double lambda_, double length_, double epsilon_, double omega0_);

    // regulator-shifted atomic frequency omega0 - 2 lambda^2 / (pi^2 epsilon)
    double omega_shifted() const;
    // free spectral range pi / L
    double fsr() const;
    // true when epsilon * omega0 is large enough to distort the spectrum
    bool regulator_warning() const { return epsilon * omega0 > 0.1; }
};

// log Gamma with branch cuts on the vertical rays {-n + iy : n = 0,1,2,..., y >= 0};
// agrees with the principal real log Gamma on the positive real axis.
Complex log_gamma(Complex z);

// psi(z) = Gamma'(z)/Gamma(z); meromorphic, no branch cuts.
Complex digamma(Complex z);

// Memory kernel mu_eps(s) (s may be complex; the pole s = i epsilon is rejected).
Complex mu_time(const CavityParams& cp, Complex s);

// Laplace transform of the kernel, analytically continued from Re z > 0.
// Branch cuts run horizontally left from z = -i n fsr, n = 0,1,2,...
Complex mu_laplace(const CavityParams& cp, Complex z);

// dz derivative of mu_laplace (closed form via digamma).
Complex mu_laplace_derivative(const CavityParams& cp, Complex z);

// Dressed atomic frequency Omega_infinity.
double omega_infinity(const CavityParams& cp);

// True when L Omega_inf / pi lies within 0.05 of a nonnegative integer,
// where the single dominant-pole picture degenerates.
bool near_resonance(const CavityParams& cp);

struct Pole {
    Complex z;
    Complex residue;
};

// Leading-order dominant pole (explicit formula, no root search).
Complex dominant_pole_perturbative(const CavityParams& cp);

// Damped Newton search for a root of z + i omega0 + mu_laplace(z), seeded at
// the perturbative pole unless a seed is supplied.  Steps never cross a
// branch cut; converged when |f| < 1e-9 * omega0.
Pole dominant_pole_numeric(const CavityParams& cp);
Pole dominant_pole_numeric(const CavityParams& cp, Complex seed);

// The two dominant poles in the near-resonant regime, found by sweeping
// Newton seeds across the resonance ray and deduplicating the converged roots.
std::vector<Pole> near_resonance_poles(const CavityParams& cp);

// Dominant-pole approximation of the excited-state amplitude.
Complex long_time_u(const Pole& p, double t);

// Log-negativity series of the dominant-pole decay for an initially pure atom
// at polar angle theta.
std::vector<SeriesPoint> ln_series(const Pole& p, double theta,
                                   const std::vector<double>& times);

} // namespace entangledyn::cavity
