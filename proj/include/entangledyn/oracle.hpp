// oracle.hpp -- independent reference implementations used by the test suite
#pragma once

#include "cavity.hpp"
#include "multimode.hpp"
#include "types.hpp"

namespace entangledyn::oracle {

struct EvolutionResult {
    std::vector<double> times;
    std::vector<Vector> states; // one-excitation amplitudes (|e,0>, |g,1_k>)
    double norm_drift = 0.0;
};

// Classic fixed-step RK4 on i dpsi/dt = H psi.  Substep size never exceeds
// dt_max, which must satisfy dt_max * (spectral bound) < 0.1.
EvolutionResult rk4_evolve(const multimode::ModeSet& ms, const Vector& psi0,
                           const std::vector<double>& times, double dt_max);

// Propagation through an explicit eigendecomposition of H.
EvolutionResult expm_evolve(const multimode::ModeSet& ms, const Vector& psi0,
                            const std::vector<double>& times);

// Full-state propagation chi -> U chi U^dag for cross-checking mixed evolution.
Matrix expm_evolve_chi(const multimode::ModeSet& ms, const Matrix& chi0, double t);

// Riemann discretization of the cavity continuum: for each branch pair
// |n| <= floor(L k_max / pi) a uniform midpoint grid on [pi n / L, k_max],
// squared couplings (lambda^2 / (pi L)) dk exp(-k eps).
multimode::ModeSet discretize_continuum(const cavity::CavityParams& cp,
                                        int n_per_branch, double k_max);

// Excited-state amplitude of the discretized bath, computed by integrating
// the exact memory-kernel equation of the mode set (trapezoidal Volterra
// scheme; the kernel is summed in closed form per branch).
struct BathAmplitude {
    std::vector<double> times;
    std::vector<Complex> u;
};
BathAmplitude bath_amplitude(const cavity::CavityParams& cp, int n_per_branch,
                             double k_max, double t_max, double dt);

// Exact Laplace transform of mu_time as a series over round-trip echoes
// (exponential integrals), analytically continued across the imaginary axis.
Complex mu_reference(const cavity::CavityParams& cp, Complex z);

// Direct quadrature of the Laplace integral; requires Re z > 0.
Complex mu_quadrature(const cavity::CavityParams& cp, Complex z);

// Exponential integral E1 for complex arguments off the negative real axis.
Complex expint_e1(Complex z);

} // namespace entangledyn::oracle
