// Weighted least-squares fitting with covariance-derived uncertainties.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace ryd {

struct FitValue {
    double value = 0.0;
    double stderr_ = 0.0;
};

struct LinearFit {
    Eigen::VectorXd coeffs;
    Eigen::MatrixXd covariance;
    double chi2 = 0.0;
    int dof = 0;
};

// Minimizes sum_i ((y_i - (A x)_i) / sigma_i)^2. With an empty sigma the fit
// is unweighted and the covariance is scaled by chi2/dof.
LinearFit weighted_linear_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                              const Eigen::VectorXd& sigma = Eigen::VectorXd());

struct RbDecayFit {
    FitValue amplitude;   // A
    FitValue decay;       // p
    FitValue offset;      // B
    FitValue error_rate;  // epsilon = (1-p)(d-1)/d
    bool valid = true;    // false when p falls outside (0, 1] or the fit degenerates
};

// Weighted fit of F(m) = A p^m + B; d = 2 for single-qubit, 4 for two-qubit.
// With a NaN fixed_offset B is free; otherwise B is pinned (short sequences
// cannot separate A from p when the offset floats).
RbDecayFit fit_rb_decay(const std::vector<double>& lengths,
                        const std::vector<double>& success,
                        const std::vector<double>& sigma, int d,
                        double fixed_offset = std::nan(""));

struct ParityFit {
    FitValue amplitude;  // A >= 0
    FitValue phase;      // theta_0
    FitValue offset;     // B
    FitValue coherence;  // P_c = 4A
};

// Fit of A cos(2 theta + theta_0) + B, A reported non-negative.
ParityFit fit_parity(const std::vector<double>& theta,
                     const std::vector<double>& signal,
                     const std::vector<double>& sigma);

struct LifetimeFit {
    FitValue gamma0;  // s^-1
    FitValue alpha;   // s^-1 mW^-1
    FitValue beta;    // s^-1 mW^-2
    bool unphysical = false;  // any coefficient fitted negative
};

// Weighted quadratic fit Gamma_m(P) = Gamma_0 + alpha P + beta P^2.
LifetimeFit fit_lifetime(const std::vector<double>& power_mw,
                         const std::vector<double>& rate,
                         const std::vector<double>& sigma);

struct LineFit {
    FitValue slope;
    FitValue intercept;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& sigma);

}  // namespace ryd
