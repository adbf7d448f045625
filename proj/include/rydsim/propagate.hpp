// Piecewise-constant evolution: exact piece exponentials by eigendecomposition.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rydsim/blockade.hpp"
#include "rydsim/pulse.hpp"

namespace ryd {

// exp(-i H tau) for Hermitian H.
Eigen::MatrixXcd hermitian_expm(const Eigen::MatrixXcd& h, double tau);

// Eigendecomposition of one Hermitian piece, kept for exact GRAPE derivatives.
struct PieceEigen {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    Eigen::MatrixXcd unitary;  // exp(-i H tau)

    // Exact directional derivative of exp(-i H tau) along dH (Frechet
    // derivative in the eigenbasis, divided differences with no branch cut).
    Eigen::MatrixXcd exp_derivative(const Eigen::MatrixXcd& dh, double tau) const;
};

PieceEigen piece_eigen(const Eigen::MatrixXcd& h, double tau);

// U = prod_n exp(-i H(phi_n, Omega(t_n)) T/N), late times left.
// Throws if the result fails ||U^dag U - I|| < 1e-10.
Eigen::MatrixXcd propagate(const Block& block, const Pulse& pulse);

// Per-shot noise view applied on top of a pulse during propagation.
struct NoiseTrace {
    double static_detuning = 0.0;              // rad/s, on every Rydberg excitation
    double atom_detuning[2] = {0.0, 0.0};      // rad/s, per-atom Rydberg shifts
    const std::vector<double>* phase = nullptr;     // additive phase per piece (rad)
    const std::vector<double>* amplitude = nullptr; // multiplicative Omega per piece
    double decay_rate = 0.0;                   // 1/T1r per Rydberg excitation (1/s)
};

// Propagates a state with noise and (optionally) non-Hermitian Rydberg decay.
// Decay is applied by a Strang split around each Hermitian piece, so the norm
// loss equals the cumulative jump probability of the trajectory.
Eigen::VectorXcd propagate_state(const Block& block, const Pulse& pulse,
                                 const Eigen::VectorXcd& psi0, const NoiseTrace& noise);

}  // namespace ryd
