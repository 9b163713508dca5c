// cavity.cpp
#include "entangledyn/cavity.hpp"

#include <algorithm>
#include <cmath>

namespace entangledyn::cavity {

namespace {

const Complex I(0.0, 1.0);

// ----- special functions -----

// principal log Gamma, valid for Re z >= 0.5 (Lanczos, g = 7)
Complex log_gamma_right(Complex z) {
    static const double c[9] = {
        0.99999999999980993,    676.5203681218851,    -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex x = c[0];
    for (int k = 1; k < 9; ++k)
        x += c[k] / (z + static_cast<double>(k));
    const Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log with the branch cut along the positive imaginary axis,
// arg in (-3 pi / 2, pi / 2]
Complex log_up(Complex z) {
    double a = std::arg(z);
    if (a > 0.5 * pi)
        a -= 2.0 * pi;
    return Complex(std::log(std::abs(z)), a);
}

double distance_to_gamma_cuts(Complex z) {
    const double x = z.real(), y = z.imag();
    // rays run upward from 0, -1, -2, ...
    double horiz;
    if (x >= 0.0)
        horiz = x; // nearest ray is at 0
    else
        horiz = std::abs(x - std::round(x));
    if (y >= 0.0)
        return horiz;
    return std::hypot(horiz, y);
}

// ----- newton helpers -----

bool segment_crosses_level(Complex p, Complex q, double level, double re_max) {
    const double a = p.imag() - level, b = q.imag() - level;
    if (a == 0.0 || b == 0.0)
        return p.real() <= re_max || q.real() <= re_max;
    if ((a > 0.0) == (b > 0.0))
        return false;
    const double t = a / (a - b);
    return p.real() + t * (q.real() - p.real()) <= re_max;
}

bool segment_crosses_axis_up(Complex p, Complex q) {
    const double a = p.real(), b = q.real();
    if ((a > 0.0) == (b > 0.0))
        return false;
    const double t = a / (a - b);
    return p.imag() + t * (q.imag() - p.imag()) >= 0.0;
}

} // namespace

CavityParams::CavityParams(double lambda_, double length_, double epsilon_, double omega0_)
    : lambda(lambda_), length(length_), epsilon(epsilon_), omega0(omega0_) {
    if (!(lambda > 0.0) || !(length > 0.0) || !(epsilon > 0.0) || !(omega0 > 0.0))
        throw ValidationError("CavityParams: lambda, length, epsilon, omega0 must be positive");
    if (!(omega_shifted() > 0.0))
        throw ValidationError("CavityParams: regulator shift exceeds omega0");
}

double CavityParams::omega_shifted() const {
    return omega0 - 2.0 * lambda * lambda / (pi * pi * epsilon);
}

double CavityParams::fsr() const {
    return pi / length;
}

Complex log_gamma(Complex z) {
    if (distance_to_gamma_cuts(z) <= 1e-12)
        throw NumericalError("log_gamma: evaluation point on a branch cut");
    if (z.real() >= 0.5)
        return log_gamma_right(z);
    const int m = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex acc(0.0, 0.0);
    for (int j = 0; j < m; ++j)
        acc += log_up(z + static_cast<double>(j));
    return log_gamma_right(z + static_cast<double>(m)) - acc;
}

Complex digamma(Complex z) {
    Complex acc(0.0, 0.0);
    if (z.real() < 12.0) {
        const double nearest = std::round(z.real());
        if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12)
            throw NumericalError("digamma: evaluation at a pole");
        const int m = static_cast<int>(std::ceil(12.0 - z.real()));
        for (int j = 0; j < m; ++j)
            acc -= 1.0 / (z + static_cast<double>(j));
        z += static_cast<double>(m);
    }
    const Complex w = 1.0 / (z * z);
    // asymptotic tail, |z| >= 12 gives ~1e-16
    Complex tail = Complex(-1.0 / 12.0, 0.0);
    static const double b[] = {1.0 / 120.0,  -1.0 / 252.0,     1.0 / 240.0,
                               -1.0 / 132.0, 691.0 / 32760.0,  -1.0 / 12.0};
    Complex wp = w;
    Complex series = tail * wp;
    for (double coef : b) {
        wp *= w;
        series += coef * wp;
    }
    return acc + std::log(z) - 0.5 / z + series;
}

Complex mu_time(const CavityParams& cp, Complex s) {
    const Complex se = s - I * cp.epsilon;
    if (std::abs(se) < 1e-14 * std::max(1.0, std::abs(s)))
        throw NumericalError("mu_time: evaluation at the regulator pole");
    const Complex q = std::exp(-I * pi * se / cp.length);
    const Complex denom = 1.0 - q;
    if (std::abs(denom) < 1e-300)
        throw NumericalError("mu_time: evaluation at an echo pole");
    const double c = cp.lambda * cp.lambda / (pi * cp.length);
    return c / (cp.epsilon + I * s) * (1.0 + q) / denom;
}

namespace {

// principal exponential integral E1: power series near 0, modified Lentz
// continued fraction otherwise
Complex e1_principal(Complex w) {
    if (std::abs(w) < 1e-300)
        throw NumericalError("mu_laplace: exponential integral at the origin");
    if (std::abs(w) <= 4.0) {
        Complex term(1.0, 0.0), sum(0.0, 0.0);
        for (int k = 1; k <= 80; ++k) {
            term *= -w / static_cast<double>(k);
            const Complex add = term / static_cast<double>(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)))
                break;
        }
        return -euler_gamma - std::log(w) - sum;
    }
    const double tiny = 1e-300;
    Complex f = w + 1.0, cc = f, d = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double ak = -static_cast<double>(k) * k;
        const Complex bk = w + static_cast<double>(2 * k + 1);
        d = bk + ak * d;
        if (std::abs(d) < tiny) d = tiny;
        cc = bk + ak / cc;
        if (std::abs(cc) < tiny) cc = tiny;
        d = 1.0 / d;
        const Complex delta = cc * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return std::exp(-w) / f;
}

// E1 continued from the Re z > 0 half plane: crossing into the lower-left
// quadrant moves across the cut of E1(-i eps z)
Complex e1_continued(const CavityParams& cp, Complex z) {
    // same branch convention as log_up: the multivaluedness of E1 is all in
    // its -log term, so shift by 2 pi i wherever log_up deviates from the
    // principal log
    const Complex xi = -I * cp.epsilon * z;
    Complex e1 = e1_principal(xi);
    if (std::arg(xi) > 0.5 * pi)
        e1 += 2.0 * pi * I;
    return e1;
}

// Binet remainder of log Gamma, on the branch continued from Im zeta < 0
Complex binet(Complex zeta) {
    return log_gamma(zeta) - (zeta - 0.5) * log_up(zeta) + zeta -
           0.5 * std::log(2.0 * pi);
}

} // namespace

Complex mu_laplace(const CavityParams& cp, Complex z) {
    const double c2 = 2.0 * cp.lambda * cp.lambda / (pi * pi);
    const Complex xi = -I * cp.epsilon * z;
    const Complex zeta = -I * cp.length * z / pi;
    const Complex head = z * std::exp(xi) * e1_continued(cp, z);
    const Complex comb = -I * (pi / cp.length) * std::exp(xi) * binet(zeta);
    return c2 * (-I / cp.epsilon + head + comb);
}

Complex mu_laplace_derivative(const CavityParams& cp, Complex z) {
    const double c2 = 2.0 * cp.lambda * cp.lambda / (pi * pi);
    const Complex xi = -I * cp.epsilon * z;
    const Complex zeta = -I * cp.length * z / pi;
    const Complex ex = std::exp(xi);
    const Complex head = ex * e1_continued(cp, z) * (1.0 - I * cp.epsilon * z) - 1.0;
    const Complex binet_prime = digamma(zeta) - log_up(zeta) + 0.5 / zeta;
    const Complex comb = -(pi * cp.epsilon / cp.length) * ex * binet(zeta) -
                         ex * binet_prime;
    return c2 * (head + comb);
}

double omega_infinity(const CavityParams& cp) {
    const double wt = cp.omega_shifted();
    const double l2 = cp.lambda * cp.lambda;
    return wt + 2.0 * l2 * wt / (pi * pi) *
                    std::log(std::exp(euler_gamma) * cp.epsilon * wt);
}

bool near_resonance(const CavityParams& cp) {
    const double x = cp.length * omega_infinity(cp) / pi;
    return std::abs(x - std::round(x)) < 0.05 && std::round(x) >= 0.0;
}

Complex dominant_pole_perturbative(const CavityParams& cp) {
    // one Picard step from the dressed frequency; error is O(lambda^4)
    const Complex z0(0.0, -omega_infinity(cp));
    return -I * cp.omega0 - mu_laplace(cp, z0);
}

namespace {

// Newton iteration with step control: steps are halved until they neither
// cross a branch cut of mu_laplace nor increase |f|.
Complex newton_pole(const CavityParams& cp, Complex z,
                    const std::vector<Complex>& deflate) {
    const double fsr = cp.fsr();
    const double tol = 1e-9 * cp.omega0;
    const double target = 1e-13 * cp.omega0;

    auto f = [&](Complex w) { return w + I * cp.omega0 + mu_laplace(cp, w); };
    auto crosses = [&](Complex p, Complex q) {
        if (segment_crosses_axis_up(p, q))
            return true;
        const int lo = static_cast<int>(std::floor(-std::max(p.imag(), q.imag()) / fsr));
        const int hi = static_cast<int>(std::ceil(-std::min(p.imag(), q.imag()) / fsr));
        for (int n = std::max(0, lo); n <= hi; ++n)
            if (segment_crosses_level(p, q, -n * fsr, 0.0))
                return true;
        return false;
    };

    Complex fz = f(z);
    double best = std::abs(fz);
    for (int it = 0; it < 100; ++it) {
        if (best < target)
            break;
        Complex fp = mu_laplace_derivative(cp, z) + 1.0;
        for (const Complex& r : deflate)
            fp -= fz / (z - r); // derivative of the deflated f(z)/prod(z - r)
        Complex g = fz;
        for (const Complex& r : deflate)
            g /= (z - r);
        Complex gp = fp;
        for (const Complex& r : deflate)
            gp /= (z - r);
        Complex step = -g / gp;

        int halvings = 0;
        while (halvings < 60 && crosses(z, z + step)) {
            step *= 0.5;
            ++halvings;
        }
        Complex znew = z + step;
        Complex fnew = f(znew);
        while (halvings < 60 && std::abs(fnew) > best && std::abs(step) > 0.0) {
            step *= 0.5;
            znew = z + step;
            fnew = f(znew);
            ++halvings;
        }
        if (std::abs(fnew) >= best && best < tol)
            break; // stagnated but already converged
        z = znew;
        fz = fnew;
        best = std::abs(fz);
    }
    if (best >= tol)
        throw NumericalError("dominant_pole_numeric: Newton iteration did not converge");
    return z;
}

} // namespace

Pole dominant_pole_numeric(const CavityParams& cp, Complex seed) {
    const Complex z = newton_pole(cp, seed, {});
    const Complex res = 1.0 / (1.0 + mu_laplace_derivative(cp, z));
    return {z, res};
}

Pole dominant_pole_numeric(const CavityParams& cp) {
    return dominant_pole_numeric(cp, dominant_pole_perturbative(cp));
}

std::vector<Pole> near_resonance_poles(const CavityParams& cp) {
    const double om = omega_infinity(cp);
    const double fsr = cp.fsr();
    const double nf = fsr * std::round(cp.length * om / pi);
    const double gamma_fgr = 2.0 * cp.lambda * cp.lambda * om / pi;
    // the pair straddles the cut ray at Im z = -n fsr; sweep seeds through a
    // window wide enough to catch both basins
    const double span = 8.0 * std::max(std::abs(om - nf), gamma_fgr);

    std::vector<Complex> roots;
    for (int k = -14; k <= 14; ++k) {
        const double dy = span * k / 14.0;
        for (double x0 : {0.0, -gamma_fgr}) {
            Complex z;
            try {
                z = newton_pole(cp, Complex(x0, -(nf + dy)), {});
            } catch (const NumericalError&) {
                continue; // seed basin ran into a cut; try the next one
            }
            if (std::abs(z.imag() + nf) > 0.5 * fsr)
                continue;
            bool fresh = true;
            for (const Complex& r : roots)
                if (std::abs(r - z) < 1e-7 * std::max(1.0, std::abs(z)))
                    fresh = false;
            if (fresh)
                roots.push_back(z);
        }
    }
    if (roots.size() < 2)
        throw NumericalError("near_resonance_poles: failed to separate the pole pair");
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return a.imag() > b.imag(); });
    std::vector<Pole> out;
    for (int j = 0; j < 2; ++j)
        out.push_back({roots[j], 1.0 / (1.0 + mu_laplace_derivative(cp, roots[j]))});
    return out;
}

Complex long_time_u(const Pole& p, double t) {
    return p.residue * std::exp(p.z * t);
}

std::vector<SeriesPoint> ln_series(const Pole& p, double theta,
                                   const std::vector<double>& times) {
    std::vector<SeriesPoint> out;
    out.reserve(times.size());
    for (double t : times) {
        const double ua = std::min(1.0, std::abs(long_time_u(p, t)));
        out.push_back({t, core::ln_from_u(ua, theta)});
    }
    return out;
}

} // namespace entangledyn::cavity
