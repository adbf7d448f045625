// Randomized benchmarking with mid-circuit erasure detection.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "rydsim/fitting.hpp"
#include "rydsim/noise.hpp"

namespace ryd {

struct ImagingParams {
    double fidelity = 0.986;          // ground-state discrimination fidelity
    double false_positive = 4e-4;     // per atom per image
    double decay_during_image = 7e-6; // P_d per atom per image
};

// Per-gate channel for single-qubit benchmarking. Decays split into a
// detectable branch (to 1S0), a silent return branch (back into the qubit
// space, state scrambled) and undetectable loss.
struct ChannelParams {
    double p_decay = 0.0;   // per-gate decay probability out of the qubit space
    double f_det = 0.0;     // fraction of decays that are detectable
    double f_return = 0.0;  // fraction of decays silently returning to the space
    double p_pauli = 0.0;   // per-gate uniform in-space Pauli error
    double gate_duration = 1.875e-3;  // average Clifford duration (s)
    ImagingParams imaging;

    void validate() const;
};

// Measured per-gate error decomposition: total error 1.0e-3 per gate, of which
// 0.56e-3 detectable decay, 2e-4 undetectable loss, 1.0e-4 silent returns and
// 1.5e-4 in-space errors.
ChannelParams calibrated_single_qubit_channel();

// Per-gate decay probability from the metastable lifetime model.
ChannelParams channel_from_lifetime(double gamma_m, double clifford_duration = 1.875e-3);

enum class AtomStatus {
    computational,
    leaked_detectable,          // in 1S0, visible to fast imaging
    leaked_undetectable_loss,
    returned_ground_undetected  // back in the space with a scrambled state
};

struct ExtendedQubitState {
    Eigen::Vector2cd amplitude{1.0, 0.0};
    AtomStatus status = AtomStatus::computational;
    bool detected = false;  // monotone: once set it stays set
};

struct RBCurvePoint {
    double length = 0.0;
    double success = 0.0;
    double success_stderr = 0.0;
    double success_cond = 0.0;       // conditioned on no erasure detection
    double success_cond_stderr = 0.0;
    long shots_total = 0;
    long shots_kept = 0;
};

struct RBResult {
    std::vector<RBCurvePoint> curve;
    RbDecayFit fit;        // unconditioned
    RbDecayFit fit_cond;   // conditioned on no detection
    FitValue conversion;   // R_e = (eps - eps_c) / eps
};

RBResult run_single_qubit_rb(const ChannelParams& channel,
                             const std::vector<int>& lengths, int erasure_period,
                             int shots, std::uint64_t seed);

// Noisy CZ channel for two-qubit benchmarking, frame-aligned so that the
// ideal gate is exactly diag(1, 1, 1, -1). Each gate application draws one
// realization from the pool.
struct TwoQubitChannel {
    std::vector<GateChannelSample> pool;
    BranchingRatios branching;
    ImagingParams imaging;

    static TwoQubitChannel ideal();
    // Removes the theta0 / theta1 frame from raw gate-channel samples, so an
    // ideal sample maps to exactly (1, 1, -1).
    static TwoQubitChannel from_samples(std::vector<GateChannelSample> samples,
                                        double theta0, double theta1,
                                        const BranchingRatios& branching,
                                        const ImagingParams& imaging = {});
    // Mean gate error of the pooled channel as probed by global rotations:
    // average fidelity over the symmetric subspace, where |01> and |10> are
    // indistinguishable (true channel error for this benchmark).
    double mean_gate_error() const;
};

RBResult run_two_qubit_rb(const TwoQubitChannel& channel,
                          const std::vector<int>& lengths, int erasure_period,
                          int shots, std::uint64_t seed);

enum class BiasInitial { zz, pp, oo };  // |00>, |++>, |11>

struct BiasPoint {
    int gates = 0;
    double detected = 0.0;
    double detected_stderr = 0.0;
};

struct BiasResult {
    std::vector<BiasPoint> points;
    FitValue per_gate;       // linear-fit slope: erasure probability per gate
    bool slope_positive = true;
};

// Repeated CZ gates with no interleaved rotations; cumulative erasure
// detection probability vs gate count, checks after every two gates.
BiasResult erasure_bias_experiment(const TwoQubitChannel& channel, BiasInitial initial,
                                   int n_gates, int shots, std::uint64_t seed);

// Ratio of two fitted per-gate erasure probabilities with first-order errors.
FitValue erasure_bias_ratio(const BiasResult& numerator, const BiasResult& denominator);

struct CountModel {
    double mu_absent = 400.0;
    double sigma_absent = 113.8;
    double mu_present = 900.0;   // ground-state atom present
    double sigma_present = 113.8;
};

// Two-Gaussian count model calibrated to the 0.986 discrimination fidelity.
CountModel default_count_model();

struct ThresholdPoint {
    double threshold = 0.0;
    double p_err_given_det = 0.0;
    double r_e = 0.0;
};

struct ThresholdSweep {
    std::vector<ThresholdPoint> points;
    bool plateau_found = false;
    double plateau_lo = 0.0;
    double plateau_hi = 0.0;
};

// Re-analyzes one simulated single-qubit RB data set over a threshold grid.
ThresholdSweep detection_threshold_sweep(const CountModel& counts,
                                         const ChannelParams& channel, int shots,
                                         std::uint64_t seed);

}  // namespace ryd
