// Bell-state readout mathematics: loss-corrected fidelities, the effective
// parity observable under imperfect spin readout, and lifetime predictions.
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "rydsim/fitting.hpp"

namespace ryd {

// Effective observable probed by the parity circuit,
//   O_theta = e^{i theta Z/2} e^{i pi X/4} O_bb e^{-i pi X/4} e^{-i theta Z/2},
// where O_bb is the both-bright POVM element with single-atom true/false
// positive rates p_tp, p_fp. At (1, 0) this is the ideal projector case and
// the (0,1) entry equals -i e^{i theta} / 4.
Eigen::Matrix4cd effective_observable(double theta, double p_tp = 1.0,
                                      double p_fp = 0.0);

struct ParityPoint {
    double theta = 0.0;    // rad
    double p_bb = 0.0;     // both-bright probability
    double stderr_ = 0.0;
};

struct BellMeasurement {
    FitValue p00;  // both-bright, no rotation
    FitValue p11;  // both-bright after a global pi pulse
    std::vector<ParityPoint> parity;
    FitValue p_nl{1.0, 0.0};  // dimer survival without the gate
    double p_tp = 1.0;
    double p_fp = 0.0;
};

struct BellFidelity {
    ParityFit parity_fit;
    FitValue coherence;     // P_c = 4A
    FitValue raw;           // F_B = (P00 + P11 + P_c) / 2
    FitValue corrected;     // F_B / P_nl
    bool above_one = false; // corrected central value exceeds 1
};

// Loss-corrected Bell fidelity with first-order error propagation.
BellFidelity bell_fidelity(const BellMeasurement& meas);

// Measured both-bright populations from true two-atom populations
// (P00, P01, P10, P11) under independent single-atom readout errors.
// Returns (P~00, P~11); P~11 is taken after a pi pulse.
std::pair<double, double> readout_forward(const Eigen::Vector4d& populations,
                                          double p_tp, double p_fp);

// Exact inverse of readout_forward for the diagonal sum:
//   P00 + P11 = (P~00 + P~11 - 2 p_tp p_fp) / (p_tp - p_fp)^2.
double diag_sum_corrected(double m00, double m11, double p_tp, double p_fp);

struct SpamBound {
    double exact = 0.0;         // (F~ - p_tp p_fp) / (p_tp - p_fp)^2
    double tp_one_bound = 0.0;  // (F~ - p_fp) / (1 - p_fp)^2, p_tp = 1 case
    // The measured fidelity underestimates the true one; holds when the
    // measured value clearly exceeds 1/2 and p_fp is small.
    bool measured_is_lower_bound = false;
};

// Readout-error correction chain for a measured Bell fidelity.
SpamBound spam_lower_bound(double f_measured, double p_tp, double p_fp);

struct SurvivalPrediction {
    double p_m = 0.0;        // metastable survival exp(-Gamma_m t)
    double p0_init0 = 0.0;   // P(spin 0 | survived, started in 0)
    double p0_init1 = 0.0;   // P(spin 0 | survived, started in 1)
};

// Survival and conditional spin populations: exponential decay out of the
// metastable manifold plus spin relaxation toward 1/2 at rate 1/T1.
SurvivalPrediction survival_model(double t, double gamma_m, double t1_spin);

}  // namespace ryd
