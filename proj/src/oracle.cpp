// oracle.cpp
#include "entangledyn/oracle.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entangledyn::oracle {

namespace {

const Complex I(0.0, 1.0);

// Hamiltonian assembly kept separate from the library path on purpose.
Matrix oracle_hamiltonian(const multimode::ModeSet& ms) {
    const int m = ms.size();
    Matrix h = Matrix::Zero(m + 1, m + 1);
    for (int k = 0; k < m; ++k) {
        h(k + 1, k + 1) = ms.deltas[k];
        h(0, k + 1) = ms.couplings[k];
        h(k + 1, 0) = ms.couplings[k];
    }
    return h;
}

double spectral_bound(const multimode::ModeSet& ms) {
    double gsum = 0.0, dmax = 0.0;
    for (std::size_t k = 0; k < ms.deltas.size(); ++k) {
        gsum += ms.couplings[k];
        dmax = std::max(dmax, std::abs(ms.deltas[k]) + ms.couplings[k]);
    }
    return std::max(gsum, dmax);
}

} // namespace

EvolutionResult rk4_evolve(const multimode::ModeSet& ms, const Vector& psi0,
                           const std::vector<double>& times, double dt_max) {
    if (psi0.size() != ms.size() + 1)
        throw ValidationError("rk4_evolve: psi0 must have dimension M + 1");
    if (!(dt_max > 0.0) || dt_max * spectral_bound(ms) >= 0.1)
        throw ValidationError("rk4_evolve: dt_max violates the stability bound");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw ValidationError("rk4_evolve: times must be nondecreasing");
    if (!times.empty() && times.front() < 0.0)
        throw ValidationError("rk4_evolve: times must be nonnegative");

    const Matrix h = oracle_hamiltonian(ms);
    auto rhs = [&](const Vector& v) -> Vector { return -I * (h * v); };

    EvolutionResult out;
    out.times = times;
    Vector psi = psi0;
    double t = 0.0;
    for (double target : times) {
        const double span = target - t;
        if (span > 0.0) {
            const int steps = static_cast<int>(std::ceil(span / dt_max));
            const double dt = span / steps;
            for (int s = 0; s < steps; ++s) {
                const Vector k1 = rhs(psi);
                const Vector k2 = rhs(psi + 0.5 * dt * k1);
                const Vector k3 = rhs(psi + 0.5 * dt * k2);
                const Vector k4 = rhs(psi + dt * k3);
                psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t = target;
        }
        out.states.push_back(psi);
    }
    out.norm_drift = std::abs(psi.norm() - psi0.norm());
    return out;
}

EvolutionResult expm_evolve(const multimode::ModeSet& ms, const Vector& psi0,
                            const std::vector<double>& times) {
    if (psi0.size() != ms.size() + 1)
        throw ValidationError("expm_evolve: psi0 must have dimension M + 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(oracle_hamiltonian(ms));
    if (es.info() != Eigen::Success)
        throw NumericalError("expm_evolve: eigendecomposition failed");
    const Vector proj = es.eigenvectors().adjoint() * psi0;

    EvolutionResult out;
    out.times = times;
    for (double t : times) {
        Vector rotated(proj.size());
        for (int j = 0; j < proj.size(); ++j)
            rotated[j] = proj[j] * std::polar(1.0, -es.eigenvalues()[j] * t);
        out.states.push_back(es.eigenvectors() * rotated);
    }
    if (!out.states.empty())
        out.norm_drift = std::abs(out.states.back().norm() - psi0.norm());
    return out;
}

Matrix expm_evolve_chi(const multimode::ModeSet& ms, const Matrix& chi0, double t) {
    const int d = ms.size() + 1;
    if (chi0.rows() != 2 * d || chi0.cols() != 2 * d)
        throw ValidationError("expm_evolve_chi: chi0 must have dimension 2(M+1)");
    Eigen::SelfAdjointEigenSolver<Matrix> es(oracle_hamiltonian(ms));
    Vector ph(d);
    for (int j = 0; j < d; ++j)
        ph[j] = std::polar(1.0, -es.eigenvalues()[j] * t);
    const Matrix ublock =
        es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();

    Matrix u = Matrix::Identity(2 * d, 2 * d);
    std::vector<int> block(d);
    block[0] = 0; // |e,0>
    for (int k = 1; k < d; ++k)
        block[k] = d + k; // |g,1_k>
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            u(block[i], block[j]) = ublock(i, j);
    return u * chi0 * u.adjoint();
}

multimode::ModeSet discretize_continuum(const cavity::CavityParams& cp,
                                        int n_per_branch, double k_max) {
    if (n_per_branch < 100)
        throw ValidationError("discretize_continuum: need at least 100 modes per branch");
    if (!(k_max * cp.epsilon >= 5.0))
        throw ValidationError("discretize_continuum: k_max must resolve the regulator");
    const double weight = cp.lambda * cp.lambda / (pi * cp.length);
    const int n_max = static_cast<int>(std::floor(cp.length * k_max / pi));
    std::vector<double> deltas, couplings;
    for (int n = -n_max; n <= n_max; ++n) {
        const double edge = std::abs(n) * pi / cp.length;
        const double dk = (k_max - edge) / n_per_branch;
        if (!(dk > 0.0))
            continue;
        for (int j = 0; j < n_per_branch; ++j) {
            const double k = edge + (j + 0.5) * dk;
            deltas.push_back(k - cp.omega0);
            couplings.push_back(std::sqrt(weight * dk * std::exp(-k * cp.epsilon)));
        }
    }
    return multimode::ModeSet(cp.omega0, std::move(deltas), std::move(couplings));
}

BathAmplitude bath_amplitude(const cavity::CavityParams& cp, int n_per_branch,
                             double k_max, double t_max, double dt) {
    if (n_per_branch < 100)
        throw ValidationError("bath_amplitude: need at least 100 modes per branch");
    if (!(k_max * cp.epsilon >= 5.0))
        throw ValidationError("bath_amplitude: k_max must resolve the regulator");
    if (!(dt > 0.0) || !(t_max > dt))
        throw ValidationError("bath_amplitude: bad time grid");

    const double weight = cp.lambda * cp.lambda / (pi * cp.length);
    const int n_max = static_cast<int>(std::floor(cp.length * k_max / pi));
    const int nsteps = static_cast<int>(std::ceil(t_max / dt));

    struct Branch {
        double pair_weight, edge, dk, head;
    };
    std::vector<Branch> branches;
    for (int n = 0; n <= n_max; ++n) {
        const double edge = n * pi / cp.length;
        const double dk = (k_max - edge) / n_per_branch;
        if (dk > 0.0)
            branches.push_back({n == 0 ? 1.0 : 2.0, edge, dk, edge + 0.5 * dk});
    }

    // interaction-picture kernel on the step grid; each branch is a finite
    // geometric sum so the cost is O(branches) per sample
    std::vector<Complex> kern(nsteps + 1);
#pragma omp parallel for schedule(static)
    for (int j = 0; j <= nsteps; ++j) {
        const double s = j * dt;
        const Complex es(cp.epsilon, s);
        Complex sum(0.0, 0.0);
        for (const Branch& b : branches) {
            const Complex r = std::exp(-b.dk * es);
            const Complex head = std::exp(-b.head * es);
            Complex geo;
            if (std::abs(1.0 - r) < 1e-12)
                geo = static_cast<double>(n_per_branch);
            else
                geo = (1.0 - std::pow(r, n_per_branch)) / (1.0 - r);
            sum += b.pair_weight * weight * b.dk * head * geo;
        }
        kern[j] = std::polar(1.0, cp.omega0 * s) * sum;
    }

    // trapezoidal Volterra integration of u' = -int_0^t K(t-t') u(t') dt',
    // implicit in the newest value; history sums use a fixed block order so
    // results do not depend on the thread count
    std::vector<Complex> u(nsteps + 1);
    u[0] = Complex(1.0, 0.0);
    std::vector<Complex> integral(nsteps + 1, Complex(0.0, 0.0));
    const Complex pivot = 1.0 + 0.25 * dt * dt * kern[0];

    constexpr int block = 4096;
    std::vector<Complex> partial((nsteps / block) + 2);

    for (int n = 0; n < nsteps; ++n) {
        // open part of the trapezoid integral at t_{n+1}: weights 1/2 at m=0,
        // 1 at m=1..n; the m=n+1 endpoint is folded into the pivot
        const int nblocks = n / block + 1;
        std::fill(partial.begin(), partial.begin() + nblocks, Complex(0.0, 0.0));
#pragma omp parallel for schedule(static)
        for (int bi = 0; bi < nblocks; ++bi) {
            const int lo = bi * block;
            const int hi = std::min(n + 1, lo + block);
            Complex acc(0.0, 0.0);
            for (int m = lo; m < hi; ++m)
                acc += (m == 0 ? 0.5 : 1.0) * kern[n + 1 - m] * u[m];
            partial[bi] = acc;
        }
        Complex open(0.0, 0.0);
        for (int bi = 0; bi < nblocks; ++bi)
            open += partial[bi];
        open *= dt;

        const Complex rhs = u[n] - 0.5 * dt * integral[n] - 0.5 * dt * open;
        u[n + 1] = rhs / pivot;
        integral[n + 1] = open + 0.5 * dt * kern[0] * u[n + 1];
    }

    BathAmplitude out;
    out.times.resize(nsteps + 1);
    for (int j = 0; j <= nsteps; ++j)
        out.times[j] = j * dt;
    out.u = std::move(u);
    return out;
}

Complex expint_e1(Complex z) {
    if (z == Complex(0.0, 0.0))
        throw NumericalError("expint_e1: argument must be nonzero");
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw NumericalError("expint_e1: argument on the standard branch cut");
    if (std::abs(z) <= 4.0) {
        // power series around 0 with the principal logarithm
        Complex sum(0.0, 0.0), term(1.0, 0.0);
        for (int k = 1; k <= 60; ++k) {
            term *= -z / static_cast<double>(k);
            const Complex add = -term / static_cast<double>(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)))
                break;
        }
        return -euler_gamma - std::log(z) + sum;
    }
    // modified Lentz continued fraction, e^-z / (z + 1 - 1/(z + 3 - 4/(...)))
    const double tiny = 1e-290;
    Complex f(tiny, 0.0), c(f), d(0.0, 0.0);
    for (int k = 0; k < 300; ++k) {
        const Complex a = k == 0 ? Complex(1.0, 0.0)
                                 : Complex(-static_cast<double>(k) * k, 0.0);
        const Complex b = z + static_cast<double>(2 * k + 1);
        d = b + a * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const Complex ratio = c * d;
        f *= ratio;
        if (std::abs(ratio - 1.0) < 1e-16)
            break;
    }
    return std::exp(-z) * f;
}

Complex mu_reference(const cavity::CavityParams& cp, Complex z) {
    const double c = cp.lambda * cp.lambda / (pi * cp.length);
    const double fsr = cp.fsr();
    auto term = [&](Complex w) -> Complex {
        const Complex xi = -I * cp.epsilon * w;
        return -I * std::exp(xi) * expint_e1(xi);
    };
    // continuation from Re z > 0: echo terms whose branch point lies above
    // Im z pick up the cut jump of the exponential integral
    auto jump = [&](Complex w) -> Complex {
        return 2.0 * pi * std::exp(I * cp.epsilon * w * (-1.0));
    };

    Complex acc(0.0, 0.0);
    for (int m = 0;; ++m) {
        const double damp = std::exp(-m * pi * cp.epsilon / cp.length);
        const Complex w = z + I * (m * fsr);
        Complex t = term(w);
        if (z.real() < 0.0 && m * fsr < -z.imag())
            t += jump(w);
        const double pair = (m == 0) ? 1.0 : 2.0;
        acc += pair * damp * t;
        if (m > 0 && damp * std::abs(t) < 1e-17 * std::max(1.0, std::abs(acc)) &&
            m * fsr > cp.omega0 - z.imag())
            break;
        if (m > 20000000)
            throw NumericalError("mu_reference: echo series failed to converge");
    }
    return c * acc;
}

Complex mu_quadrature(const cavity::CavityParams& cp, Complex z) {
    if (!(z.real() > 0.0))
        throw ValidationError("mu_quadrature: requires Re z > 0");
    const double l = cp.length;
    const double half = std::asinh(l / cp.epsilon);

    // echo-centred cells [2mL - L, 2mL + L]; the map s = s_m + eps sinh(v)
    // concentrates points at the kernel spikes
    auto integrand = [&](double s) -> Complex {
        return std::exp(-z * s) * cavity::mu_time(cp, Complex(s, 0.0));
    };
    auto simpson_cell = [&](double center, double vlo, double vhi) -> Complex {
        const int n = 800; // even
        const double h = (vhi - vlo) / n;
        Complex acc(0.0, 0.0);
        for (int j = 0; j <= n; ++j) {
            const double v = vlo + j * h;
            const double s = center + cp.epsilon * std::sinh(v);
            if (s < 0.0)
                continue;
            const double wgt = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += wgt * integrand(s) * cp.epsilon * std::cosh(v);
        }
        return acc * (h / 3.0);
    };

    Complex total(0.0, 0.0);
    const double cell_damping = 2.0 * l * z.real();
    const int m_max = static_cast<int>(std::ceil(45.0 / cell_damping)) + 1;
    for (int m = 0; m <= m_max; ++m) {
        const double center = 2.0 * m * l;
        total += simpson_cell(center, m == 0 ? 0.0 : -half, half);
    }
    return total;
}

} // namespace entangledyn::oracle
