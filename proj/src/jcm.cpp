// jcm.cpp
#include "entangledyn/jcm.hpp"

#include <cmath>

namespace entangledyn::jcm {

JcmParams::JcmParams(double g_, double delta_, double omega_)
    : g(g_), delta(delta_), omega(omega_) {
    if (!(g > 0.0))
        throw ValidationError("JcmParams: g must be positive");
    if (!(omega > 0.0))
        throw ValidationError("JcmParams: omega must be positive");
    if (!std::isfinite(delta))
        throw ValidationError("JcmParams: delta must be finite");
}

double JcmParams::rabi() const {
    return std::sqrt(delta * delta + 4.0 * g * g);
}

Complex u(const JcmParams& p, double t) {
    const double da = p.rabi();
    const Complex phase = std::polar(1.0, -(p.omega + 0.5 * p.delta) * t);
    if (da == 0.0)
        return phase;
    const Complex plus = std::polar(1.0, -0.5 * da * t);
    const Complex minus = std::polar(1.0, 0.5 * da * t);
    return phase * ((da + p.delta) / (2.0 * da) * plus + (da - p.delta) / (2.0 * da) * minus);
}

std::vector<SeriesPoint> pure_series(const JcmParams& p, const core::BlochVector& b,
                                     const std::vector<double>& times, Measure m) {
    if (b.r != 1.0)
        throw ValidationError("pure_series: initial state must be pure (r = 1)");
    std::vector<SeriesPoint> out;
    out.reserve(times.size());
    for (double t : times) {
        const double ua = std::abs(u(p, t));
        double v;
        if (m == Measure::LogNegativity)
            v = core::ln_from_u(ua, b.theta);
        else
            v = core::eoe_from_spectrum(core::reduced_eigs_from_u(ua, b.theta));
        out.push_back({t, v});
    }
    return out;
}

core::TruncatedState mixed_evolution(const JcmParams& p, const core::BlochVector& b,
                                     double t) {
    // dressed 2x2 propagator on {|e,0>, |g,1>}; |g,0> is stationary and
    // |e,1> stays unpopulated
    const double d = -p.delta; // diagonal element of the one-excitation block
    const double om = p.rabi();
    const Complex global = std::polar(1.0, -0.5 * d * t);
    Complex u00, u01, u11;
    if (om == 0.0) {
        u00 = u11 = global;
        u01 = Complex(0, 0);
    } else {
        const double c = std::cos(0.5 * om * t), s = std::sin(0.5 * om * t);
        u00 = global * Complex(c, s * d / om);
        u11 = global * Complex(c, -s * d / om);
        u01 = global * Complex(0.0, -2.0 * p.g * s / om);
    }

    const Matrix rho = core::bloch_to_density(b).matrix();
    Matrix U = Matrix::Identity(4, 4);
    U(0, 0) = u00;
    U(0, 3) = u01;
    U(3, 0) = u01;
    U(3, 3) = u11;

    Matrix chi0 = Matrix::Zero(4, 4);
    chi0(0, 0) = rho(0, 0);
    chi0(0, 2) = rho(0, 1);
    chi0(2, 0) = rho(1, 0);
    chi0(2, 2) = rho(1, 1);

    Matrix chi = U * chi0 * U.adjoint();
    // scrub rounding noise so the state validates cleanly
    chi = 0.5 * (chi + chi.adjoint()).eval();
    return core::TruncatedState(1, chi);
}

std::array<double, 3> bloch_precession_axis(const JcmParams& p) {
    return {p.g, 0.0, -0.5 * p.delta};
}

} // namespace entangledyn::jcm
