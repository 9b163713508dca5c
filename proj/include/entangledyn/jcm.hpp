// jcm.hpp -- single-mode closed-form dynamics in the one-excitation sector
#pragma once

#include "core.hpp"
#include "types.hpp"

#include <array>

namespace entangledyn::jcm {

// Single mode with coupling g.  delta = omega_atom - omega_mode, and omega
// is the mode frequency (enters only through the overall phase of u).
struct JcmParams {
    double g = 1.0;
    double delta = 0.0;
    double omega = 1.0;

    JcmParams() = default;
    JcmParams(double g_, double delta_, double omega_);

    double rabi() const; // sqrt(delta^2 + 4 g^2)
};

// Excited-state amplitude at time t for an atom initially in |e>,
// field in vacuum (full phase, not interaction picture).
Complex u(const JcmParams& p, double t);

using entangledyn::SeriesPoint;

enum class Measure { LogNegativity, Entropy };

// Closed-form measure series for an initially pure atom (r = 1).
std::vector<SeriesPoint> pure_series(const JcmParams& p, const core::BlochVector& b,
                                     const std::vector<double>& times, Measure m);

// Joint state at time t for an arbitrary (possibly mixed) initial atom and
// vacuum field, evolved with the one-excitation interaction Hamiltonian.
core::TruncatedState mixed_evolution(const JcmParams& p, const core::BlochVector& b,
                                     double t);

// Effective precession axis of the one-excitation Bloch dynamics: (g, 0, -delta/2).
std::array<double, 3> bloch_precession_axis(const JcmParams& p);

} // namespace entangledyn::jcm
