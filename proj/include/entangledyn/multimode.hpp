// multimode.hpp -- M discrete modes, one-excitation dynamics via poles/residues
#pragma once

#include "core.hpp"
#include "types.hpp"

namespace entangledyn::multimode {

// M modes: deltas[k] = omega_k - omega0 (detuning from the atomic frequency
// omega0), couplings[k] > 0.
struct ModeSet {
    double omega0 = 1.0;
    std::vector<double> deltas;
    std::vector<double> couplings;

    ModeSet() = default;
    ModeSet(double omega0_, std::vector<double> deltas_, std::vector<double> couplings_);

    int size() const { return static_cast<int>(deltas.size()); }
};

// Roots z_j of the resolvent denominator (z_j = -i x_j with x_j real) and
// their residues c_j; secular_roots holds the real x_j in ascending order.
struct PoleSet {
    std::vector<Complex> roots;
    std::vector<Complex> weights;
    std::vector<double> secular_roots;
};

// (M+1)x(M+1) interaction Hamiltonian on {|e,0>, |g,1_1>, ..., |g,1_M>}:
// first row/column the couplings, diagonal (0, delta_1, ..., delta_M).
Eigen::MatrixXd interaction_matrix(const ModeSet& ms);

// All poles via Hermitian eigendecomposition; weights are the spectral
// overlaps |<e,0|v_j>|^2 (real, nonnegative, summing to 1).
PoleSet poles(const ModeSet& ms);

// Residues from the product formula c_j = prod_k(z_j + i d_k) / prod_{l!=j}(z_j - z_l).
// Requires simple roots (separation > 1e-8 * max |z|).
std::vector<Complex> product_formula_weights(const ModeSet& ms, const PoleSet& ps);

// Excited-state amplitude (interaction picture) from the residue expansion.
Complex u_residue(const PoleSet& ps, double t);

// Absolute residual of the real secular equation
// x prod_k(x - d_k) - sum_k g_k^2 prod_{l!=k}(x - d_l), scaled to be relative.
double secular_residual(const ModeSet& ms, double x);

// Joint atom+field state at time t for an arbitrary initial atom, vacuum field.
core::TruncatedState mixed_evolution(const ModeSet& ms, const core::BlochVector& b,
                                     double t);

// Closed-form |u| for two symmetrically detuned modes with equal coupling g:
// |delta^2 + 2 g^2 cos(t sqrt(2 g^2 + delta^2))| / (delta^2 + 2 g^2).
double u_two_mode_symmetric(double g, double delta, double t);

// Equally spaced ladder of 2Q+1 modes around the near-resonant detuning
// delta with spacing capital_delta; couplings carry the frequency weight
// g sqrt((omega0 + delta) / (omega0 + delta + k capital_delta)).
ModeSet cavity_ladder(int q, double g, double delta, double capital_delta, double omega0);

// Leading-order ladder poles: the two near-resonant roots
// -i (delta +- sqrt(delta^2 + 4 g^2)) / 2 and the side poles
// -i (delta +- (k capital_delta + g^2 / (k capital_delta))), k = 1..Q.
std::vector<Complex> perturbative_poles(int q, double g, double delta,
                                        double capital_delta);

// |u(t)| of the ladder via exact poles and residues.
double u_shifted(const ModeSet& ladder, double t);

} // namespace entangledyn::multimode
