#include "rydsim/spam.hpp"

#include <cmath>
#include <stdexcept>

namespace ryd {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4d;
using std::complex;

namespace {

Matrix4cd kron(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

void check_rates(double p_tp, double p_fp) {
    if (p_tp < 0.0 || p_tp > 1.0 || p_fp < 0.0 || p_fp > 1.0)
        throw std::invalid_argument("readout rates must lie in [0,1]");
}

}  // namespace

Eigen::Matrix4cd effective_observable(double theta, double p_tp, double p_fp) {
    check_rates(p_tp, p_fp);
    const complex<double> i(0.0, 1.0);

    // Single-atom bright POVM element, then both-bright = tensor square.
    Matrix2cd bright = Matrix2cd::Zero();
    bright(0, 0) = p_tp;
    bright(1, 1) = p_fp;
    const Matrix4cd o_bb = kron(bright, bright);

    Matrix2cd rx, rz;
    const double c = std::cos(M_PI / 4.0), s = std::sin(M_PI / 4.0);
    rx << c, i * s, i * s, c;  // e^{i pi sigma_x / 4}
    rz << std::polar(1.0, theta / 2.0), 0.0, 0.0, std::polar(1.0, -theta / 2.0);

    const Matrix4cd u = kron(rz, rz) * kron(rx, rx);
    return u * o_bb * u.adjoint();
}

BellFidelity bell_fidelity(const BellMeasurement& meas) {
    if (meas.p_nl.value <= 0.0)
        throw std::invalid_argument("no-loss probability must be positive");
    for (const FitValue* p : {&meas.p00, &meas.p11})
        if (p->value < 0.0 || p->value > 1.0)
            throw std::invalid_argument("population outside [0,1]");

    BellFidelity out;
    std::vector<double> th, sig, err;
    for (const auto& p : meas.parity) {
        th.push_back(p.theta);
        sig.push_back(p.p_bb);
        err.push_back(p.stderr_);
    }
    out.parity_fit = fit_parity(th, sig, err);
    out.coherence = out.parity_fit.coherence;

    out.raw.value = (meas.p00.value + meas.p11.value + out.coherence.value) / 2.0;
    out.raw.stderr_ = 0.5 * std::hypot(std::hypot(meas.p00.stderr_, meas.p11.stderr_),
                                       out.coherence.stderr_);

    const double pnl = meas.p_nl.value;
    out.corrected.value = out.raw.value / pnl;
    out.corrected.stderr_ =
        std::hypot(out.raw.stderr_ / pnl,
                   out.raw.value * meas.p_nl.stderr_ / (pnl * pnl));
    out.above_one = out.corrected.value > 1.0;
    return out;
}

std::pair<double, double> readout_forward(const Vector4d& populations, double p_tp,
                                          double p_fp) {
    check_rates(p_tp, p_fp);
    const double p00 = populations(0), p01 = populations(1), p10 = populations(2),
                 p11 = populations(3);
    const double m00 =
        p00 * p_tp * p_tp + (p01 + p10) * p_tp * p_fp + p11 * p_fp * p_fp;
    const double m11 =
        p11 * p_tp * p_tp + (p01 + p10) * p_tp * p_fp + p00 * p_fp * p_fp;
    return {m00, m11};
}

double diag_sum_corrected(double m00, double m11, double p_tp, double p_fp) {
    check_rates(p_tp, p_fp);
    if (p_tp <= p_fp)
        throw std::invalid_argument("true-positive rate must exceed false-positive rate");
    const double d = p_tp - p_fp;
    return (m00 + m11 - 2.0 * p_tp * p_fp) / (d * d);
}

SpamBound spam_lower_bound(double f_measured, double p_tp, double p_fp) {
    check_rates(p_tp, p_fp);
    if (p_tp <= p_fp)
        throw std::invalid_argument("true-positive rate must exceed false-positive rate");
    if (f_measured < 0.0 || f_measured > 1.0)
        throw std::invalid_argument("measured fidelity outside [0,1]");

    SpamBound out;
    const double d = p_tp - p_fp;
    out.exact = (f_measured - p_tp * p_fp) / (d * d);
    out.tp_one_bound = (f_measured - p_fp) / ((1.0 - p_fp) * (1.0 - p_fp));
    out.measured_is_lower_bound = f_measured > 0.5 && p_fp < 0.05;
    return out;
}

SurvivalPrediction survival_model(double t, double gamma_m, double t1_spin) {
    if (gamma_m <= 0.0 || t1_spin <= 0.0)
        throw std::invalid_argument("rates must be positive");
    SurvivalPrediction out;
    out.p_m = std::exp(-gamma_m * t);
    const double relax = std::exp(-t / t1_spin);
    out.p0_init0 = 0.5 * (1.0 + relax);
    out.p0_init1 = 0.5 * (1.0 - relax);
    return out;
}

}  // namespace ryd
