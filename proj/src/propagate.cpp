#include "rydsim/propagate.hpp"

#include <cmath>
#include <stdexcept>

namespace ryd {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

MatrixXcd hermitian_expm(const MatrixXcd& h, double tau) {
    return piece_eigen(h, tau).unitary;
}

PieceEigen piece_eigen(const MatrixXcd& h, double tau) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    PieceEigen p;
    p.eigenvalues = solver.eigenvalues();
    p.eigenvectors = solver.eigenvectors();
    const int n = static_cast<int>(p.eigenvalues.size());
    VectorXcd ph(n);
    for (int i = 0; i < n; ++i) {
        const double a = -p.eigenvalues(i) * tau;
        ph(i) = complex<double>(std::cos(a), std::sin(a));
    }
    p.unitary = p.eigenvectors * ph.asDiagonal() * p.eigenvectors.adjoint();
    return p;
}

namespace {
double sinc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}
}  // namespace

MatrixXcd PieceEigen::exp_derivative(const MatrixXcd& dh, double tau) const {
    // f(l) = e^{-i l tau}; divided difference
    // f[l,m] = -i tau e^{-i(l+m)tau/2} sinc((l-m)tau/2), exact for all gaps.
    const int n = static_cast<int>(eigenvalues.size());
    MatrixXcd g = eigenvectors.adjoint() * dh * eigenvectors;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double mid = 0.5 * (eigenvalues(a) + eigenvalues(b)) * tau;
            const double gap = 0.5 * (eigenvalues(a) - eigenvalues(b)) * tau;
            const complex<double> phase(std::cos(mid), -std::sin(mid));
            g(a, b) *= complex<double>(0.0, -tau) * phase * sinc(gap);
        }
    }
    return eigenvectors * g * eigenvectors.adjoint();
}

MatrixXcd propagate(const Block& block, const Pulse& pulse) {
    pulse.validate();
    const double tau = pulse.dt();
    MatrixXcd u = MatrixXcd::Identity(block.dim(), block.dim());
    for (int n = 0; n < pulse.n_pieces; ++n) {
        const MatrixXcd h = block.hamiltonian(pulse.phase[static_cast<std::size_t>(n)],
                                              pulse.envelope_at_piece(n));
        u = hermitian_expm(h, tau) * u;
    }
    const double defect = (u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols())).norm();
    if (defect >= 1e-10) throw std::runtime_error("propagator lost unitarity");
    return u;
}

VectorXcd propagate_state(const Block& block, const Pulse& pulse,
                          const VectorXcd& psi0, const NoiseTrace& noise) {
    pulse.validate();
    const double tau = pulse.dt();
    VectorXcd psi = psi0;
    VectorXd half_decay;
    if (noise.decay_rate > 0.0) {
        half_decay = (-0.25 * noise.decay_rate * tau * block.ryd_count).array().exp();
    }
    VectorXcd atom_shift;
    if (noise.atom_detuning[0] != 0.0 || noise.atom_detuning[1] != 0.0) {
        atom_shift = (noise.atom_detuning[0] * block.atom_ryd.col(0) +
                      noise.atom_detuning[1] * block.atom_ryd.col(1))
                         .cast<complex<double>>();
    }
    for (int n = 0; n < pulse.n_pieces; ++n) {
        const std::size_t k = static_cast<std::size_t>(n);
        double phi = pulse.phase[k];
        if (noise.phase) phi += (*noise.phase)[k];
        double om = pulse.envelope_at_piece(n);
        if (noise.amplitude) om *= (*noise.amplitude)[k];
        MatrixXcd h = block.hamiltonian(phi, om, noise.static_detuning);
        if (atom_shift.size() > 0) h += atom_shift.asDiagonal();
        if (noise.decay_rate > 0.0) psi = half_decay.asDiagonal() * psi;
        psi = hermitian_expm(h, tau) * psi;
        if (noise.decay_rate > 0.0) psi = half_decay.asDiagonal() * psi;
    }
    return psi;
}

}  // namespace ryd
