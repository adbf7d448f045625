#include "rydsim/noise.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "rydsim/propagate.hpp"
#include "rydsim/rng.hpp"

namespace ryd {

using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

void BranchingRatios::validate() const {
    const double fracs[] = {to_3p0, to_1s0, to_3p2, unaccounted,
                            post_repump_1s0, post_repump_3p0};
    for (double f : fracs)
        if (f < 0.0 || f > 1.0)
            throw std::invalid_argument("branching fraction outside [0,1]");
    if (std::abs(to_3p0 + to_1s0 + to_3p2 + unaccounted - 1.0) > 1e-6)
        throw std::invalid_argument("pre-repump branching fractions must sum to 1");
}

void NoiseConfig::validate() const {
    if (!(t1r > 0.0)) throw std::invalid_argument("t1r must be > 0");
    if (!(t2star > 0.0)) throw std::invalid_argument("t2star must be > 0");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (intensity_rms < 0.0) throw std::invalid_argument("intensity_rms must be >= 0");
    for (std::size_t i = 1; i < phase_psd.size(); ++i)
        if (!(phase_psd[i].frequency_hz > phase_psd[i - 1].frequency_hz))
            throw std::invalid_argument("PSD frequencies must be strictly increasing");
    branching.validate();
}

std::vector<PsdPoint> default_phase_psd() {
    // Stand-in for a cavity-locked UV laser: 1/f flicker below 100 kHz, a
    // servo bump around 500 kHz, and a falling tail toward the MHz range.
    // Integrated power ~3e-3 rad^2 (pre-SHG). Supply a measured table for
    // quantitative comparisons.
    return {
        {1e4, 2e-9},  {3e4, 6e-10}, {1e5, 1.5e-10},
        {2e5, 2e-9},  {3e5, 5e-9},  {4e5, 8e-9},
        {5e5, 8e-9},  {6e5, 5e-9},  {7e5, 2e-9},
        {1e6, 2e-10}, {1.5e6, 5e-11},
    };
}

SourceToggles SourceToggles::all() {
    return {true, true, true, true, true};
}

SourceToggles SourceToggles::none() { return {}; }

SourceToggles SourceToggles::parse(const std::vector<std::string>& names) {
    SourceToggles t;
    for (const auto& n : names) {
        if (n == "rydberg_decay") t.rydberg_decay = true;
        else if (n == "doppler") t.doppler = true;
        else if (n == "phase_noise") t.phase_noise = true;
        else if (n == "intensity_noise") t.intensity_noise = true;
        else if (n == "envelope_distortion") t.envelope_distortion = true;
        else throw std::invalid_argument("unknown noise source: " + n);
    }
    return t;
}

std::vector<std::string> SourceToggles::names() const {
    std::vector<std::string> out;
    if (rydberg_decay) out.push_back("rydberg_decay");
    if (doppler) out.push_back("doppler");
    if (phase_noise) out.push_back("phase_noise");
    if (intensity_noise) out.push_back("intensity_noise");
    if (envelope_distortion) out.push_back("envelope_distortion");
    return out;
}

double doppler_sigma(const NoiseConfig& config) {
    if (std::isinf(config.t2star)) return 0.0;
    return std::sqrt(2.0) / config.t2star;
}

double sample_doppler(const NoiseConfig& config, std::mt19937_64& rng) {
    const double sigma = doppler_sigma(config);
    if (sigma == 0.0) return 0.0;
    std::normal_distribution<double> dist(0.0, sigma);
    return dist(rng);
}

namespace {

std::vector<double> psd_bin_widths(const std::vector<PsdPoint>& psd) {
    const std::size_t n = psd.size();
    std::vector<double> w(n, 0.0);
    if (n == 1) {
        w[0] = 1.0;  // single line: 1 Hz reference bin
        return w;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i == 0 ? psd[0].frequency_hz - (psd[1].frequency_hz - psd[0].frequency_hz)
                                 : psd[i - 1].frequency_hz;
        const double hi = i == n - 1
            ? psd[n - 1].frequency_hz + (psd[n - 1].frequency_hz - psd[n - 2].frequency_hz)
            : psd[i + 1].frequency_hz;
        w[i] = 0.5 * (hi - lo);
    }
    return w;
}

}  // namespace

double integrated_psd_power(const std::vector<PsdPoint>& psd) {
    const auto w = psd_bin_widths(psd);
    double p = 0.0;
    for (std::size_t i = 0; i < psd.size(); ++i) p += psd[i].psd_rad2_per_hz * w[i];
    return p;
}

std::vector<double> synthesize_phase_trace(const std::vector<PsdPoint>& psd,
                                           double duration, int n_pieces,
                                           std::mt19937_64& rng) {
    std::vector<double> trace(static_cast<std::size_t>(n_pieces), 0.0);
    if (psd.empty()) return trace;
    const auto widths = psd_bin_widths(psd);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    for (std::size_t i = 0; i < psd.size(); ++i) {
        // One-sided PSD: variance of a cosine of amplitude a is a^2/2 = S w.
        // The factor 2 is the SHG amplitude doubling.
        const double amp = 2.0 * std::sqrt(2.0 * psd[i].psd_rad2_per_hz * widths[i]);
        const double omega = 2.0 * M_PI * psd[i].frequency_hz;
        const double psi = uni(rng);
        for (int n = 0; n < n_pieces; ++n) {
            const double t = (n + 0.5) * duration / n_pieces;
            trace[static_cast<std::size_t>(n)] += amp * std::cos(omega * t + psi);
        }
    }
    return trace;
}

double envelope_distortion(const NoiseConfig& config, double t) {
    if (config.envelope_distortion_amp == 0.0) return 1.0;
    const double tau = config.envelope_distortion_tau > 0.0 ? config.envelope_distortion_tau
                                                            : 1e-7;
    return 1.0 - config.envelope_distortion_amp * std::exp(-t / tau);
}

NoiseSample sample_noise(const NoiseConfig& config, const SourceToggles& sources,
                         const Pulse& pulse, std::uint64_t shot_index) {
    std::mt19937_64 rng = make_engine(config.seed, shot_index);
    NoiseSample s;
    const std::size_t n = static_cast<std::size_t>(pulse.n_pieces);
    if (sources.doppler) {
        // Thermal velocities are uncorrelated between the two atoms.
        s.doppler_detuning[0] = sample_doppler(config, rng);
        s.doppler_detuning[1] = sample_doppler(config, rng);
    }
    if (sources.phase_noise)
        s.phase_trace = synthesize_phase_trace(config.phase_psd, pulse.duration,
                                               pulse.n_pieces, rng);
    if (sources.intensity_noise || sources.envelope_distortion) {
        double gain = 1.0;
        if (sources.intensity_noise) {
            std::normal_distribution<double> dist(1.0, config.intensity_rms);
            gain = std::max(1e-3, dist(rng));
        }
        s.amplitude_trace.assign(n, gain);
        if (sources.envelope_distortion)
            for (int k = 0; k < pulse.n_pieces; ++k)
                s.amplitude_trace[static_cast<std::size_t>(k)] *=
                    envelope_distortion(config, pulse.piece_time(k));
    }
    return s;
}

namespace {

struct ShotOutcome {
    complex<double> u[3];
    double p_decay[3];
    double p_end_ryd[3];
    VectorXd pops[3];
};

ShotOutcome run_shot(const Pulse& pulse, const BlockadeModel& model,
                     const NoiseConfig& config, const SourceToggles& sources,
                     std::uint64_t shot_index) {
    const NoiseSample s = sample_noise(config, sources, pulse, shot_index);
    NoiseTrace trace;
    trace.atom_detuning[0] = s.doppler_detuning[0];
    trace.atom_detuning[1] = s.doppler_detuning[1];
    if (!s.phase_trace.empty()) trace.phase = &s.phase_trace;
    if (!s.amplitude_trace.empty()) trace.amplitude = &s.amplitude_trace;
    if (sources.rydberg_decay) trace.decay_rate = 1.0 / config.t1r;

    ShotOutcome out;
    for (int k = 0; k < 3; ++k) {
        const Block& b = model.blockaded ? model.block(k) : model.full;
        const int init = model.blockaded ? model.block(k).initial
                                         : model.block(k).indices[0];
        VectorXcd psi0 = VectorXcd::Zero(b.dim());
        psi0(init) = 1.0;
        const VectorXcd psi = propagate_state(b, pulse, psi0, trace);
        out.u[k] = psi(init);
        const double norm2 = psi.squaredNorm();
        out.p_decay[k] = std::max(0.0, 1.0 - norm2);
        double ryd = 0.0;
        for (int j = 0; j < b.dim(); ++j)
            if (b.ryd_count(j) > 0.5) ryd += std::norm(psi(j));
        out.p_end_ryd[k] = ryd;
        out.pops[k] = VectorXd(b.dim() + 1);
        for (int j = 0; j < b.dim(); ++j) out.pops[k](j) = std::norm(psi(j));
        out.pops[k](b.dim()) = out.p_decay[k];
    }
    return out;
}

}  // namespace

GateErrorReport simulate_noisy_gate(const Pulse& pulse, const BlockadeModel& model,
                                    const NoiseConfig& config,
                                    const SourceToggles& sources, double theta1) {
    pulse.validate();
    config.validate();
    if (std::isnan(theta1))
        theta1 = cz_fidelity(block_overlaps(model, pulse)).theta1;

    const int shots = config.shots;
    std::vector<double> err(static_cast<std::size_t>(shots));
    std::vector<double> leak_decay(static_cast<std::size_t>(shots));
    std::vector<double> leak_ryd(static_cast<std::size_t>(shots));
    std::vector<ShotOutcome> outs(static_cast<std::size_t>(shots));

    parallel_for(static_cast<std::size_t>(shots), [&](std::size_t i) {
        ShotOutcome o = run_shot(pulse, model, config, sources, i);
        CZOverlaps u{o.u[0], o.u[1], o.u[2]};
        err[i] = 1.0 - cz_fidelity_at(u, theta1);
        // Computational-state weights (1,2,1)/4 over the blocks.
        const double w[3] = {0.25, 0.5, 0.25};
        double d = 0.0, r = 0.0;
        for (int k = 0; k < 3; ++k) {
            d += w[k] * o.p_decay[k];
            r += w[k] * o.p_end_ryd[k];
        }
        leak_decay[i] = d;
        leak_ryd[i] = r;
        outs[i] = std::move(o);
    });

    GateErrorReport rep;
    rep.theta1 = theta1;
    rep.shots = shots;
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < shots; ++i) {
        const double x = err[static_cast<std::size_t>(i)];
        const double delta = x - mean;
        mean += delta / (i + 1);
        m2 += delta * (x - mean);
    }
    rep.total_error = mean;
    rep.total_error_stderr = shots > 1 ? std::sqrt(m2 / (shots - 1.0) / shots) : 0.0;
    for (int i = 0; i < shots; ++i) {
        rep.decay_error += leak_decay[static_cast<std::size_t>(i)] / shots;
        rep.end_rydberg_error += leak_ryd[static_cast<std::size_t>(i)] / shots;
    }
    rep.leakage_error = rep.decay_error + rep.end_rydberg_error;
    rep.leakage_frac = rep.total_error > 0.0 ? rep.leakage_error / rep.total_error : 0.0;
    for (int k = 0; k < 3; ++k) {
        rep.channel_pops[static_cast<std::size_t>(k)] =
            VectorXd::Zero(outs[0].pops[k].size());
        for (int i = 0; i < shots; ++i)
            rep.channel_pops[static_cast<std::size_t>(k)] +=
                outs[static_cast<std::size_t>(i)].pops[k] / shots;
    }
    rep.wide_confidence = rep.total_error_stderr > 0.25 * std::max(rep.total_error, 1e-12);
    return rep;
}

double leakage_fraction(const GateErrorReport& report) { return report.leakage_frac; }

DetectableSplit detectable_split(const GateErrorReport& report, const NoiseConfig& config) {
    const BranchingRatios& b = config.branching;
    DetectableSplit s;
    s.detectable_erasure = report.leakage_error * b.post_repump_1s0;
    s.returned_undetected = report.leakage_error * b.post_repump_3p0;
    s.undetectable_loss = report.leakage_error *
                          (1.0 - b.post_repump_1s0 - b.post_repump_3p0);
    return s;
}

ErrorBudget error_budget(const Pulse& pulse, const BlockadeModel& model,
                         const NoiseConfig& config) {
    const double theta1 = cz_fidelity(block_overlaps(model, pulse)).theta1;
    ErrorBudget budget;
    const std::vector<std::string> sources = {
        "rydberg_decay", "doppler", "phase_noise", "intensity_noise",
        "envelope_distortion"};
    for (const auto& name : sources) {
        SourceToggles t = SourceToggles::parse({name});
        budget.rows.emplace_back(name, simulate_noisy_gate(pulse, model, config, t, theta1));
    }
    budget.combined = simulate_noisy_gate(pulse, model, config, SourceToggles::all(), theta1);
    for (const auto& [name, rep] : budget.rows)
        budget.combined.per_source[name] = rep.total_error;
    return budget;
}

std::vector<GateChannelSample> sample_gate_channel(const Pulse& pulse,
                                                   const BlockadeModel& model,
                                                   const NoiseConfig& config,
                                                   const SourceToggles& sources,
                                                   int count) {
    std::vector<GateChannelSample> out(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        const ShotOutcome o = run_shot(pulse, model, config, sources, i);
        GateChannelSample s;
        for (int k = 0; k < 3; ++k) {
            s.u[k] = o.u[k];
            s.p_decay[k] = o.p_decay[k];
            s.p_end_ryd[k] = o.p_end_ryd[k];
        }
        out[i] = s;
    });
    return out;
}

std::vector<PsdPoint> read_psd_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open PSD table: " + path);
    std::vector<PsdPoint> psd;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.rfind("frequency", 0) == 0) continue;
        std::istringstream ss(line);
        PsdPoint p;
        if (!(ss >> p.frequency_hz >> p.psd_rad2_per_hz))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
        psd.push_back(p);
    }
    return psd;
}

void write_psd_table(const std::string& path, const std::vector<PsdPoint>& psd) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open PSD table for writing: " + path);
    f.precision(17);
    f << "frequency_hz\tpsd_rad2_per_hz\n";
    for (const auto& p : psd) f << p.frequency_hz << '\t' << p.psd_rad2_per_hz << '\n';
}

}  // namespace ryd
