#include "rydsim/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace ryd {

using Eigen::MatrixXd;
using Eigen::VectorXd;

LinearFit weighted_linear_fit(const MatrixXd& design, const VectorXd& y,
                              const VectorXd& sigma) {
    const int n = static_cast<int>(y.size());
    const int k = static_cast<int>(design.cols());
    if (design.rows() != n) throw std::invalid_argument("design/data size mismatch");
    if (n < k) throw std::invalid_argument("underdetermined fit");

    VectorXd w = VectorXd::Ones(n);
    const bool weighted = sigma.size() > 0;
    if (weighted) {
        if (sigma.size() != n) throw std::invalid_argument("sigma size mismatch");
        for (int i = 0; i < n; ++i) {
            if (!(sigma(i) > 0.0)) throw std::invalid_argument("sigma must be > 0");
            w(i) = 1.0 / (sigma(i) * sigma(i));
        }
    }

    const MatrixXd ata = design.transpose() * w.asDiagonal() * design;
    const VectorXd atb = design.transpose() * (w.asDiagonal() * y);
    Eigen::LDLT<MatrixXd> solver(ata);
    LinearFit fit;
    fit.coeffs = solver.solve(atb);
    fit.covariance = solver.solve(MatrixXd::Identity(k, k));
    const VectorXd resid = y - design * fit.coeffs;
    fit.chi2 = resid.dot(w.asDiagonal() * resid);
    fit.dof = n - k;
    if (!weighted && fit.dof > 0) fit.covariance *= fit.chi2 / fit.dof;
    return fit;
}

RbDecayFit fit_rb_decay(const std::vector<double>& lengths,
                        const std::vector<double>& success,
                        const std::vector<double>& sigma, int d,
                        double fixed_offset) {
    const int n = static_cast<int>(lengths.size());
    if (n < 3) throw std::invalid_argument("RB fit needs at least 3 lengths");
    if (success.size() != lengths.size()) throw std::invalid_argument("size mismatch");
    const bool free_offset = std::isnan(fixed_offset);
    const int k = free_offset ? 2 : 1;
    VectorXd y(n), sig;
    for (int i = 0; i < n; ++i) {
        y(i) = success[static_cast<std::size_t>(i)];
        if (!free_offset) y(i) -= fixed_offset;
    }
    if (!sigma.empty()) {
        sig.resize(n);
        for (int i = 0; i < n; ++i)
            sig(i) = std::max(sigma[static_cast<std::size_t>(i)], 1e-6);
    }

    // Profile over p: the remaining parameters are linear at fixed p.
    auto design_at = [&](double p) {
        MatrixXd design(n, k);
        for (int i = 0; i < n; ++i) {
            design(i, 0) = std::pow(p, lengths[static_cast<std::size_t>(i)]);
            if (free_offset) design(i, 1) = 1.0;
        }
        return design;
    };
    auto chi2_at = [&](double p) {
        return weighted_linear_fit(design_at(p), y, sig).chi2;
    };
    double best_p = 1.0, best_chi = chi2_at(1.0 - 1e-12);
    for (int i = 0; i <= 400; ++i) {
        const double p = 0.5 + 0.5 * i / 400.0;
        const double c = chi2_at(std::min(p, 1.0 - 1e-12));
        if (c < best_chi) { best_chi = c; best_p = p; }
    }
    // Golden-section refinement around the grid minimum.
    double lo = std::max(0.5, best_p - 0.01), hi = std::min(1.0 - 1e-12, best_p + 0.01);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = chi2_at(a), fb = chi2_at(b);
    for (int it = 0; it < 60; ++it) {
        if (fa < fb) { hi = b; b = a; fb = fa; a = hi - gr * (hi - lo); fa = chi2_at(a); }
        else { lo = a; a = b; fa = fb; b = lo + gr * (hi - lo); fb = chi2_at(b); }
    }
    const double p = 0.5 * (lo + hi);

    const LinearFit lin = weighted_linear_fit(design_at(p), y, sig);
    const double A = lin.coeffs(0);
    const double B = free_offset ? lin.coeffs(1) : fixed_offset;

    // Covariance of the free parameters from the full Jacobian at the optimum.
    MatrixXd jac(n, k + 1);
    for (int i = 0; i < n; ++i) {
        const double m = lengths[static_cast<std::size_t>(i)];
        jac(i, 0) = std::pow(p, m);
        jac(i, 1) = m > 0 ? A * m * std::pow(p, m - 1.0) : 0.0;
        if (free_offset) jac(i, 2) = 1.0;
    }
    VectorXd w = VectorXd::Ones(n);
    if (sig.size() > 0)
        for (int i = 0; i < n; ++i) w(i) = 1.0 / (sig(i) * sig(i));
    MatrixXd jtj = jac.transpose() * w.asDiagonal() * jac;
    MatrixXd cov = jtj.ldlt().solve(MatrixXd::Identity(k + 1, k + 1));
    if (sig.size() == 0 && n > k + 1) cov *= best_chi / (n - k - 1);

    RbDecayFit fit;
    fit.amplitude = {A, std::sqrt(std::max(0.0, cov(0, 0)))};
    fit.decay = {p, std::sqrt(std::max(0.0, cov(1, 1)))};
    fit.offset = {B, free_offset ? std::sqrt(std::max(0.0, cov(2, 2))) : 0.0};
    const double scale = (d - 1.0) / d;
    fit.error_rate = {(1.0 - p) * scale, fit.decay.stderr_ * scale};
    fit.valid = (p > 0.0 && p <= 1.0 && A > 0.0);
    return fit;
}

ParityFit fit_parity(const std::vector<double>& theta,
                     const std::vector<double>& signal,
                     const std::vector<double>& sigma) {
    const int n = static_cast<int>(theta.size());
    if (n < 5) throw std::invalid_argument("parity fit needs at least 5 phase points");
    double span = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            span = std::max(span, std::abs(theta[static_cast<std::size_t>(i)] -
                                           theta[static_cast<std::size_t>(j)]));
    if (span < M_PI - 1e-9)
        throw std::invalid_argument("phase points must span a full period of 2 theta");

    MatrixXd design(n, 3);
    VectorXd y(n), sig;
    for (int i = 0; i < n; ++i) {
        const double th = theta[static_cast<std::size_t>(i)];
        design(i, 0) = std::cos(2.0 * th);
        design(i, 1) = std::sin(2.0 * th);
        design(i, 2) = 1.0;
        y(i) = signal[static_cast<std::size_t>(i)];
    }
    if (!sigma.empty()) {
        sig.resize(n);
        for (int i = 0; i < n; ++i) sig(i) = sigma[static_cast<std::size_t>(i)];
    }
    const LinearFit lin = weighted_linear_fit(design, y, sig);
    const double a = lin.coeffs(0), b = lin.coeffs(1);
    const double A = std::hypot(a, b);

    ParityFit fit;
    fit.offset = {lin.coeffs(2), std::sqrt(std::max(0.0, lin.covariance(2, 2)))};
    if (A < 1e-300) {
        fit.amplitude = {0.0, std::sqrt(std::max(0.0, lin.covariance(0, 0)))};
        fit.phase = {0.0, 0.0};
    } else {
        // Delta method through A = hypot(a, b), theta0 = atan2(-b, a).
        const Eigen::Vector2d ga(a / A, b / A);
        const Eigen::Vector2d gt(b / (A * A), -a / (A * A));
        const Eigen::Matrix2d cab = lin.covariance.topLeftCorner<2, 2>();
        fit.amplitude = {A, std::sqrt(std::max(0.0, double(ga.transpose() * cab * ga)))};
        fit.phase = {std::atan2(-b, a), std::sqrt(std::max(0.0, double(gt.transpose() * cab * gt)))};
    }
    fit.coherence = {4.0 * fit.amplitude.value, 4.0 * fit.amplitude.stderr_};
    return fit;
}

LifetimeFit fit_lifetime(const std::vector<double>& power_mw,
                         const std::vector<double>& rate,
                         const std::vector<double>& sigma) {
    const int n = static_cast<int>(power_mw.size());
    {
        std::vector<double> distinct;
        for (double p : power_mw) {
            bool seen = false;
            for (double q : distinct) if (std::abs(p - q) < 1e-12) seen = true;
            if (!seen) distinct.push_back(p);
        }
        if (distinct.size() < 3)
            throw std::invalid_argument("lifetime fit needs at least 3 distinct powers");
    }
    MatrixXd design(n, 3);
    VectorXd y(n), sig;
    for (int i = 0; i < n; ++i) {
        const double p = power_mw[static_cast<std::size_t>(i)];
        design(i, 0) = 1.0;
        design(i, 1) = p;
        design(i, 2) = p * p;
        y(i) = rate[static_cast<std::size_t>(i)];
    }
    if (!sigma.empty()) {
        sig.resize(n);
        for (int i = 0; i < n; ++i) sig(i) = sigma[static_cast<std::size_t>(i)];
    }
    const LinearFit lin = weighted_linear_fit(design, y, sig);
    LifetimeFit fit;
    fit.gamma0 = {lin.coeffs(0), std::sqrt(std::max(0.0, lin.covariance(0, 0)))};
    fit.alpha = {lin.coeffs(1), std::sqrt(std::max(0.0, lin.covariance(1, 1)))};
    fit.beta = {lin.coeffs(2), std::sqrt(std::max(0.0, lin.covariance(2, 2)))};
    fit.unphysical = lin.coeffs.minCoeff() < 0.0;
    return fit;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& sigma) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("line fit needs at least 2 points");
    MatrixXd design(n, 2);
    VectorXd yy(n), sig;
    for (int i = 0; i < n; ++i) {
        design(i, 0) = x[static_cast<std::size_t>(i)];
        design(i, 1) = 1.0;
        yy(i) = y[static_cast<std::size_t>(i)];
    }
    if (!sigma.empty()) {
        sig.resize(n);
        for (int i = 0; i < n; ++i) sig(i) = sigma[static_cast<std::size_t>(i)];
    }
    const LinearFit lin = weighted_linear_fit(design, yy, sig);
    LineFit fit;
    fit.slope = {lin.coeffs(0), std::sqrt(std::max(0.0, lin.covariance(0, 0)))};
    fit.intercept = {lin.coeffs(1), std::sqrt(std::max(0.0, lin.covariance(1, 1)))};
    return fit;
}

}  // namespace ryd
