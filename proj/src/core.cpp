// core.cpp
#include "entangledyn/core.hpp"

#include <cmath>

namespace entangledyn::core {

namespace {

constexpr double herm_tol = 1e-12;
constexpr double trace_tol = 1e-12;
constexpr double psd_tol = -1e-10;

void check_density(const Matrix& rho, const char* what) {
    if (rho.rows() != rho.cols())
        throw ValidationError(std::string(what) + ": matrix not square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw ValidationError(std::string(what) + ": matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol ||
        std::abs(rho.trace().imag()) > trace_tol)
        throw ValidationError(std::string(what) + ": trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < psd_tol)
        throw ValidationError(std::string(what) + ": matrix not positive semidefinite");
}

double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

} // namespace

BlochVector::BlochVector(double r_, double theta_, double phi_)
    : r(r_), theta(theta_), phi(phi_) {
    if (!(r >= 0.0 && r <= 1.0))
        throw ValidationError("BlochVector: r must lie in [0, 1]");
    if (!(theta >= 0.0 && theta <= pi))
        throw ValidationError("BlochVector: theta must lie in [0, pi]");
    if (!std::isfinite(phi))
        throw ValidationError("BlochVector: phi must be finite");
}

DensityOperator::DensityOperator(Matrix rho) : rho_(std::move(rho)) {
    check_density(rho_, "DensityOperator");
}

TruncatedState::TruncatedState(int mode_count, Matrix chi)
    : modes_(mode_count), chi_(std::move(chi)) {
    if (modes_ < 1)
        throw ValidationError("TruncatedState: mode_count must be >= 1");
    if (chi_.rows() != 2 * (modes_ + 1))
        throw ValidationError("TruncatedState: dimension must equal 2(M+1)");
    check_density(chi_, "TruncatedState");
}

DensityOperator bloch_to_density(const BlochVector& b) {
    const double c = std::cos(b.theta), s = std::sin(b.theta);
    Matrix rho(2, 2);
    // coherence phase chosen so the |e><g| element carries e^{+i phi}
    rho(0, 0) = 0.5 * (1.0 + b.r * c);
    rho(1, 1) = 0.5 * (1.0 - b.r * c);
    rho(0, 1) = 0.5 * b.r * s * std::polar(1.0, b.phi);
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityOperator(rho);
}

Matrix partial_transpose(const TruncatedState& state) {
    const int d = state.field_dim();
    const Matrix& chi = state.matrix();
    Matrix out(2 * d, 2 * d);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int f = 0; f < d; ++f)
                for (int g = 0; g < d; ++g)
                    out(a * d + f, b * d + g) = chi(a * d + g, b * d + f);
    return out;
}

double trace_norm(const Matrix& herm) {
    if ((herm - herm.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("trace_norm: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double log_negativity(const TruncatedState& state) {
    return std::log2(trace_norm(partial_transpose(state)));
}

DensityOperator trace_out_field(const TruncatedState& state) {
    const int d = state.field_dim();
    const Matrix& chi = state.matrix();
    Matrix rho = Matrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int f = 0; f < d; ++f)
                rho(a, b) += chi(a * d + f, b * d + f);
    return DensityOperator(rho);
}

double eoe(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        h -= xlog2x(std::max(0.0, es.eigenvalues()[i]));
    return h;
}

Spectrum reduced_eigs_from_u(double u_abs, double theta) {
    if (u_abs < 0.0 || u_abs > 1.0 + 1e-12)
        throw ValidationError("reduced_eigs_from_u: |u| must lie in [0, 1]");
    u_abs = std::min(u_abs, 1.0);
    const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    const double m = u_abs * u_abs - std::pow(u_abs, 4);
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * c2 * c2 * m));
    return Spectrum{{0.5 * (1.0 + disc), 0.5 * (1.0 - disc)}};
}

double eoe_from_spectrum(const Spectrum& s) {
    double h = 0.0;
    for (double p : s.p) {
        if (p < -1e-12 || p > 1.0 + 1e-12)
            throw ValidationError("eoe_from_spectrum: probabilities must lie in [0, 1]");
        h -= xlog2x(std::max(0.0, p));
    }
    return h;
}

double ln_pure_from_spectrum(const Spectrum& s) {
    double root_sum = 0.0;
    for (double p : s.p)
        root_sum += std::sqrt(std::max(0.0, p));
    return std::log2(root_sum * root_sum);
}

double ln_from_u(double u_abs, double theta) {
    if (u_abs < 0.0 || u_abs > 1.0 + 1e-12)
        throw ValidationError("ln_from_u: |u| must lie in [0, 1]");
    u_abs = std::min(u_abs, 1.0);
    const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    const double m = u_abs * u_abs - std::pow(u_abs, 4);
    return std::log2(1.0 + 2.0 * c2 * std::sqrt(std::max(0.0, m)));
}

} // namespace entangledyn::core
