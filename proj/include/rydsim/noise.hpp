// Monte Carlo noise model for the two-qubit gate: Rydberg decay, Doppler
// detuning, laser phase/intensity noise, and envelope distortion.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rydsim/blockade.hpp"
#include "rydsim/grape.hpp"
#include "rydsim/pulse.hpp"

namespace ryd {

struct BranchingRatios {
    // Rydberg-decay recovery fractions after 400 us.
    double to_3p0 = 0.10;
    double to_1s0 = 0.25;
    double to_3p2 = 0.35;
    double unaccounted = 0.30;
    // After repumping 3P2 via 3S1.
    double post_repump_1s0 = 0.51;
    double post_repump_3p0 = 0.19;

    void validate() const;  // each in [0,1], pre-repump set sums to 1 within 1e-6
};

struct PsdPoint {
    double frequency_hz = 0.0;
    double psd_rad2_per_hz = 0.0;  // one-sided phase-noise PSD, measured pre-SHG
};

struct NoiseConfig {
    double t1r = 65e-6;       // Rydberg lifetime (s)
    double t2star = 5.7e-6;   // Ramsey Gaussian 1/e time (s); +inf disables Doppler
    std::vector<PsdPoint> phase_psd;
    double intensity_rms = 0.01;           // relative, per-shot static multiplier
    double envelope_distortion_amp = 0.0;  // relative rising-edge amplitude error
    double envelope_distortion_tau = 0.0;  // recovery time constant (s)
    BranchingRatios branching;
    int shots = 4000;
    std::uint64_t seed = 0;

    void validate() const;
};

// Stand-in spectrum for a cavity-locked UV laser: 1/f flicker below 100 kHz,
// a servo bump near 500 kHz, a falling MHz tail; ~3e-3 rad^2 integrated
// (pre-SHG). Supply a measured table for quantitative comparisons.
std::vector<PsdPoint> default_phase_psd();

struct SourceToggles {
    bool rydberg_decay = false;
    bool doppler = false;
    bool phase_noise = false;
    bool intensity_noise = false;
    bool envelope_distortion = false;

    static SourceToggles all();
    static SourceToggles none();
    static SourceToggles parse(const std::vector<std::string>& names);
    std::vector<std::string> names() const;
};

struct JumpEvent {
    double time = 0.0;
    int level = 0;            // decaying Rydberg level index (2..5)
    std::string channel;      // destination: "1S0", "3P0", "loss"
};

struct NoiseSample {
    double doppler_detuning[2] = {0.0, 0.0};  // rad/s, independent per atom
    std::vector<double> phase_trace;     // rad, one per piece
    std::vector<double> amplitude_trace; // relative multiplier, one per piece
    std::vector<JumpEvent> jump_schedule;
};

// Gaussian quasi-static detuning with sigma = sqrt(2)/T2*, so the ensemble
// Ramsey contrast is exp(-(t/T2*)^2).
double doppler_sigma(const NoiseConfig& config);
double sample_doppler(const NoiseConfig& config, std::mt19937_64& rng);

// Sum-of-cosines synthesis from the PSD table: one component per row, bin
// widths from midpoints (edge rows extend by one spacing; a single row spans
// 1 Hz). Amplitudes are doubled for second-harmonic generation, so the trace
// variance is 4x the integrated table power.
std::vector<double> synthesize_phase_trace(const std::vector<PsdPoint>& psd,
                                           double duration, int n_pieces,
                                           std::mt19937_64& rng);
double integrated_psd_power(const std::vector<PsdPoint>& psd);  // pre-SHG, rad^2

// Deterministic multiplicative envelope error mimicking a rising-edge
// distortion; identity when amp == 0.
double envelope_distortion(const NoiseConfig& config, double t);

// One reproducible realization of all enabled noise sources for a shot.
NoiseSample sample_noise(const NoiseConfig& config, const SourceToggles& sources,
                         const Pulse& pulse, std::uint64_t shot_index);

struct GateErrorReport {
    double total_error = 0.0;
    double total_error_stderr = 0.0;
    double decay_error = 0.0;        // trajectory norm loss (mid-gate jumps)
    double end_rydberg_error = 0.0;  // population left in Rydberg levels
    double leakage_error = 0.0;      // decay_error + end_rydberg_error
    double leakage_frac = 0.0;       // leakage_error / total_error
    std::map<std::string, double> per_source;  // filled by error_budget
    // Averaged final populations per initial state; last entry is jump mass.
    std::array<Eigen::VectorXd, 3> channel_pops;
    double theta1 = 0.0;
    int shots = 0;
    bool wide_confidence = false;    // stderr comparable to the estimate itself
};

// Trajectory average over config.shots realizations. Rydberg decay enters as a
// non-Hermitian -i/(2 T1r) sum |r><r| drift; a jump terminates the coherent
// trajectory (first-jump truncation), so the norm loss is the jump mass.
// theta1 is the calibrated single-qubit phase; pass NaN to take it from the
// ideal pulse.
GateErrorReport simulate_noisy_gate(const Pulse& pulse, const BlockadeModel& model,
                                    const NoiseConfig& config,
                                    const SourceToggles& sources,
                                    double theta1 = std::nan(""));

double leakage_fraction(const GateErrorReport& report);

struct DetectableSplit {
    double detectable_erasure = 0.0;   // decays reaching 1S0 after repump
    double returned_undetected = 0.0;  // back to 3P0, in-space error
    double undetectable_loss = 0.0;
};

DetectableSplit detectable_split(const GateErrorReport& report, const NoiseConfig& config);

struct ErrorBudget {
    std::vector<std::pair<std::string, GateErrorReport>> rows;
    GateErrorReport combined;
};

ErrorBudget error_budget(const Pulse& pulse, const BlockadeModel& model,
                         const NoiseConfig& config);

// One noisy realization of the gate as seen by the computational subspace:
// sub-normalized diagonal amplitudes plus leak probabilities per block.
struct GateChannelSample {
    std::complex<double> u[3];  // u00, u01, u11
    double p_decay[3] = {0, 0, 0};
    double p_end_ryd[3] = {0, 0, 0};
};

std::vector<GateChannelSample> sample_gate_channel(const Pulse& pulse,
                                                   const BlockadeModel& model,
                                                   const NoiseConfig& config,
                                                   const SourceToggles& sources,
                                                   int count);

// PSD table I/O: delimited text (frequency_hz, psd_rad2_per_hz).
std::vector<PsdPoint> read_psd_table(const std::string& path);
void write_psd_table(const std::string& path, const std::vector<PsdPoint>& psd);

}  // namespace ryd
