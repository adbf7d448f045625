// GRAPE synthesis of the CZ phase profile and its Chebyshev parameterization.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "rydsim/blockade.hpp"
#include "rydsim/propagate.hpp"
#include "rydsim/pulse.hpp"

namespace ryd {

// Diagonal computational-subspace overlaps of the blockaded propagators.
struct CZOverlaps {
    std::complex<double> u00{0.0, 0.0};
    std::complex<double> u01{0.0, 0.0};
    std::complex<double> u11{0.0, 0.0};
};

CZOverlaps block_overlaps(const BlockadeModel& model, const Pulse& pulse);

struct CZFidelity {
    double fidelity = 0.0;
    double theta1 = 0.0;  // maximizing single-qubit phase
};

// Average-gate fidelity on the computational subspace with the |01>/|10>
// degeneracy at weight 2:
//   F = max_theta1 (sum_k w_k |m_k|^2 + |sum_k w_k m_k|^2) / 20,
//   m = (u00, u01 e^{-i theta1}, -u11 e^{-2 i theta1}), w = (1, 2, 1).
// The global phase theta0 drops out. Overlap magnitudes above 1 + 1e-6 are
// rejected as non-unitary input.
CZFidelity cz_fidelity(const CZOverlaps& u);
double cz_fidelity_at(const CZOverlaps& u, double theta1);

struct GradientResult {
    double fidelity = 0.0;
    double theta1 = 0.0;
    CZOverlaps overlaps;
    Eigen::VectorXd gradient;  // dF/dphi_n, exact
};

// O(N) analytic gradient via cached forward/backward products and exact
// piece-exponential derivatives.
GradientResult fidelity_gradient(const BlockadeModel& model, const Pulse& pulse);

struct OptimizerConfig {
    int restarts = 20;
    int max_iterations = 5000;
    double gradient_tol = 1e-9;       // sup-norm convergence threshold
    double target_infidelity = 1e-5;  // early stop once a restart reaches this
    bool stop_at_target = true;
    int lbfgs_memory = 10;
    // After the best restart converges, re-optimize within the Chebyshev
    // detuning subspace of this order so the pulse survives a low-order
    // polynomial refit without fidelity loss. 0 disables the stage.
    int polish_order = 13;
};

struct OptimizationResult {
    Pulse pulse;
    double theta1 = 0.0;
    double infidelity = 1.0;
    int iterations = 0;
    bool converged = false;
    int restart = -1;  // which restart produced the best pulse
};

// Gradient ascent (L-BFGS with backtracking line search) over the N piece
// phases, best pulse over seeded random restarts. Deterministic given seed.
OptimizationResult optimize(const GateParams& params, int n_pieces, double edge_sigma,
                            std::uint64_t seed, const OptimizerConfig& config = {});

struct ChebyshevRefit {
    ChebyshevDetuning detuning;
    double residual_rms = 0.0;   // rad/s, fit residual on the implied detuning
    bool residual_ok = true;
};

// Least-squares fit of the implied Delta(t) = phi_dot(t) onto T_0..T_nmax.
ChebyshevRefit chebyshev_refit(const Pulse& pulse, int n_max,
                               double residual_threshold = 0.0);

struct ScanPoint {
    double value = 0.0;     // coefficient value (rad/s)
    double fidelity = 0.0;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    double best_value = 0.0;
    double best_fidelity = 0.0;
};

using PulseEvaluator = std::function<double(const Pulse&)>;

// Scans coefficient c[index] over [c - range, c + range] on a uniform grid,
// rebuilding the pulse through the exact antiderivative each time.
ScanResult finetune_scan(const ChebyshevDetuning& coeffs, int index, double range,
                         int points, int n_pieces, double omega, double duration,
                         double edge_sigma, const PulseEvaluator& evaluator);

}  // namespace ryd
