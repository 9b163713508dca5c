// multimode.cpp
#include "entangledyn/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entangledyn::multimode {

ModeSet::ModeSet(double omega0_, std::vector<double> deltas_, std::vector<double> couplings_)
    : omega0(omega0_), deltas(std::move(deltas_)), couplings(std::move(couplings_)) {
    if (deltas.empty())
        throw ValidationError("ModeSet: at least one mode required");
    if (deltas.size() != couplings.size())
        throw ValidationError("ModeSet: deltas and couplings must have equal length");
    if (!(omega0 > 0.0))
        throw ValidationError("ModeSet: omega0 must be positive");
    for (double g : couplings)
        if (!(g > 0.0))
            throw ValidationError("ModeSet: couplings must be positive");
    for (double d : deltas)
        if (!std::isfinite(d))
            throw ValidationError("ModeSet: detunings must be finite");
}

Eigen::MatrixXd interaction_matrix(const ModeSet& ms) {
    const int m = ms.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int k = 0; k < m; ++k) {
        h(k + 1, k + 1) = ms.deltas[k];
        h(0, k + 1) = ms.couplings[k];
        h(k + 1, 0) = ms.couplings[k];
    }
    return h;
}

PoleSet poles(const ModeSet& ms) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(interaction_matrix(ms));
    if (es.info() != Eigen::Success)
        throw NumericalError("poles: eigendecomposition failed");
    PoleSet ps;
    const int n = ms.size() + 1;
    ps.roots.reserve(n);
    ps.weights.reserve(n);
    ps.secular_roots.reserve(n);
    for (int j = 0; j < n; ++j) {
        const double x = es.eigenvalues()[j];
        const double w = es.eigenvectors()(0, j) * es.eigenvectors()(0, j);
        ps.secular_roots.push_back(x);
        ps.roots.emplace_back(0.0, -x);
        ps.weights.emplace_back(w, 0.0);
    }
    return ps;
}

std::vector<Complex> product_formula_weights(const ModeSet& ms, const PoleSet& ps) {
    const int n = static_cast<int>(ps.roots.size());
    double zmax = 0.0;
    for (const Complex& z : ps.roots)
        zmax = std::max(zmax, std::abs(z));
    double sep = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
            sep = std::min(sep, std::abs(ps.roots[j] - ps.roots[l]));
    if (sep < 1e-8 * zmax)
        throw NumericalError("product_formula_weights: roots too close to separate");

    std::vector<Complex> out(n);
    for (int j = 0; j < n; ++j) {
        Complex num(1.0, 0.0), den(1.0, 0.0);
        for (double d : ms.deltas)
            num *= ps.roots[j] + Complex(0.0, d);
        for (int l = 0; l < n; ++l)
            if (l != j)
                den *= ps.roots[j] - ps.roots[l];
        out[j] = num / den;
    }
    return out;
}

Complex u_residue(const PoleSet& ps, double t) {
    Complex u(0.0, 0.0);
    for (std::size_t j = 0; j < ps.roots.size(); ++j)
        u += ps.weights[j] * std::exp(ps.roots[j] * t);
    return u;
}

double secular_residual(const ModeSet& ms, double x) {
    const int m = ms.size();
    double lhs = x;
    for (double d : ms.deltas)
        lhs *= x - d;
    double rhs = 0.0;
    for (int k = 0; k < m; ++k) {
        double p = ms.couplings[k] * ms.couplings[k];
        for (int l = 0; l < m; ++l)
            if (l != k)
                p *= x - ms.deltas[l];
        rhs += p;
    }
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

core::TruncatedState mixed_evolution(const ModeSet& ms, const core::BlochVector& b,
                                     double t) {
    const int m = ms.size();
    const int d = m + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(interaction_matrix(ms));
    if (es.info() != Eigen::Success)
        throw NumericalError("mixed_evolution: eigendecomposition failed");

    // propagator on the one-excitation block {|e,0>, |g,1_k>}
    Vector phases(d);
    for (int j = 0; j < d; ++j)
        phases[j] = std::polar(1.0, -es.eigenvalues()[j] * t);
    Matrix ublock = es.eigenvectors().cast<Complex>() * phases.asDiagonal() *
                    es.eigenvectors().transpose().cast<Complex>();

    // embed: |g,0> and the unpopulated |e,1_k> levels are left alone
    Matrix u = Matrix::Identity(2 * d, 2 * d);
    auto idx = [d](int a, int f) { return a * d + f; };
    std::vector<int> block(d);
    block[0] = idx(0, 0);
    for (int k = 1; k < d; ++k)
        block[k] = idx(1, k);
    for (int i = 0; i < d; ++i) {
        u(block[i], block[i]) = ublock(i, i);
        for (int j = 0; j < d; ++j)
            if (i != j)
                u(block[i], block[j]) = ublock(i, j);
    }

    const Matrix rho = core::bloch_to_density(b).matrix();
    Matrix chi0 = Matrix::Zero(2 * d, 2 * d);
    chi0(idx(0, 0), idx(0, 0)) = rho(0, 0);
    chi0(idx(0, 0), idx(1, 0)) = rho(0, 1);
    chi0(idx(1, 0), idx(0, 0)) = rho(1, 0);
    chi0(idx(1, 0), idx(1, 0)) = rho(1, 1);

    Matrix chi = u * chi0 * u.adjoint();
    chi = 0.5 * (chi + chi.adjoint()).eval();
    return core::TruncatedState(m, chi);
}

double u_two_mode_symmetric(double g, double delta, double t) {
    if (!(g > 0.0))
        throw ValidationError("u_two_mode_symmetric: g must be positive");
    const double d2 = delta * delta, g2 = g * g;
    return std::abs(d2 + 2.0 * g2 * std::cos(t * std::sqrt(2.0 * g2 + d2))) / (d2 + 2.0 * g2);
}

ModeSet cavity_ladder(int q, double g, double delta, double capital_delta, double omega0) {
    if (q < 0)
        throw ValidationError("cavity_ladder: Q must be nonnegative");
    if (!(capital_delta > 0.0))
        throw ValidationError("cavity_ladder: mode spacing must be positive");
    std::vector<double> deltas, couplings;
    for (int k = -q; k <= q; ++k) {
        const double w = omega0 + delta + k * capital_delta;
        if (!(w > 0.0))
            throw ValidationError("cavity_ladder: ladder reaches nonpositive frequencies");
        deltas.push_back(delta + k * capital_delta);
        couplings.push_back(g * std::sqrt((omega0 + delta) / w));
    }
    return ModeSet(omega0, std::move(deltas), std::move(couplings));
}

std::vector<Complex> perturbative_poles(int q, double g, double delta,
                                        double capital_delta) {
    if (q < 0)
        throw ValidationError("perturbative_poles: Q must be nonnegative");
    if (!(g > 0.0) || !(capital_delta > 0.0))
        throw ValidationError("perturbative_poles: g and spacing must be positive");
    const double da = std::sqrt(delta * delta + 4.0 * g * g);
    std::vector<Complex> out;
    out.emplace_back(0.0, -0.5 * (delta + da));
    out.emplace_back(0.0, -0.5 * (delta - da));
    for (int k = 1; k <= q; ++k) {
        // the side roots sit at the mode detunings delta + k Delta, pushed
        // outward by the level repulsion g^2 / (k Delta)
        const double s = k * capital_delta + g * g / (k * capital_delta);
        out.emplace_back(0.0, -(delta + s));
        out.emplace_back(0.0, -(delta - s));
    }
    return out;
}

double u_shifted(const ModeSet& ladder, double t) {
    return std::abs(u_residue(poles(ladder), t));
}

} // namespace entangledyn::multimode
