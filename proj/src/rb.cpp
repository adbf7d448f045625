#include "rydsim/rb.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "rydsim/clifford.hpp"
#include "rydsim/grape.hpp"
#include "rydsim/rng.hpp"

namespace ryd {

using Eigen::Vector2cd;
using Eigen::Vector4cd;
using Eigen::Matrix4cd;
using std::complex;

void ChannelParams::validate() const {
    const double probs[] = {p_decay, f_det, f_return, p_pauli,
                            imaging.fidelity, imaging.false_positive,
                            imaging.decay_during_image};
    for (double p : probs)
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("channel probability outside [0,1]");
    if (f_det + f_return > 1.0 + 1e-12)
        throw std::invalid_argument("f_det + f_return must not exceed 1");
}

ChannelParams calibrated_single_qubit_channel() {
    // Error contributions (each ~ probability / 2 for always-fail events):
    // detectable decay 0.56e-3, undetectable loss 2e-4, silent return 1.0e-4,
    // in-space 1.5e-4; total 1.0e-3 per gate.
    ChannelParams c;
    const double l_det = 2.0 * 0.56e-3;
    const double l_loss = 2.0 * 2.0e-4;
    const double l_ret = 2.0 * 1.0e-4;
    c.p_decay = l_det + l_loss + l_ret;
    c.f_det = l_det / c.p_decay;
    c.f_return = l_ret / c.p_decay;
    c.p_pauli = 2.25e-4;  // epsilon_pauli = (2/3) q with q = 2.25e-4 gives 1.5e-4
    c.validate();
    return c;
}

ChannelParams channel_from_lifetime(double gamma_m, double clifford_duration) {
    ChannelParams c = calibrated_single_qubit_channel();
    c.gate_duration = clifford_duration;
    c.p_decay = gamma_m * clifford_duration;
    return c;
}

namespace {

struct ShotRecord {
    bool success = false;
    bool detected = false;
};

FitValue conversion_fraction(const RbDecayFit& uncond, const RbDecayFit& cond) {
    FitValue r;
    const double e = uncond.error_rate.value;
    const double ec = cond.error_rate.value;
    if (e <= 0.0) return {0.0, 0.0};
    r.value = (e - ec) / e;
    const double de = uncond.error_rate.stderr_;
    const double dec = cond.error_rate.stderr_;
    r.stderr_ = std::sqrt(std::pow(ec / (e * e) * de, 2) + std::pow(dec / e, 2));
    return r;
}

RBResult finalize_rb(const std::vector<int>& lengths,
                     const std::vector<std::vector<ShotRecord>>& records, int d,
                     double floor) {
    RBResult out;
    std::vector<double> ls, succ, sig, succ_c, sig_c;
    for (std::size_t li = 0; li < lengths.size(); ++li) {
        const auto& recs = records[li];
        long n = static_cast<long>(recs.size());
        long ok = 0, kept = 0, ok_kept = 0;
        for (const auto& r : recs) {
            ok += r.success;
            if (!r.detected) {
                ++kept;
                ok_kept += r.success;
            }
        }
        RBCurvePoint p;
        p.length = lengths[li];
        p.shots_total = n;
        p.shots_kept = kept;
        p.success = static_cast<double>(ok) / n;
        p.success_stderr =
            std::sqrt(std::max(p.success * (1.0 - p.success), 0.25 / n) / n);
        if (kept > 0) {
            p.success_cond = static_cast<double>(ok_kept) / kept;
            p.success_cond_stderr = std::sqrt(
                std::max(p.success_cond * (1.0 - p.success_cond), 0.25 / kept) / kept);
        }
        out.curve.push_back(p);
        ls.push_back(p.length);
        succ.push_back(p.success);
        sig.push_back(p.success_stderr);
        if (kept > 0) {
            succ_c.push_back(p.success_cond);
            sig_c.push_back(p.success_cond_stderr);
        }
    }
    // Offset pinned at the fully mixed / lost asymptote: the sequences are too
    // short to separate the amplitude from the decay with a floating offset.
    out.fit = fit_rb_decay(ls, succ, sig, d, floor);
    if (succ_c.size() == ls.size())
        out.fit_cond = fit_rb_decay(ls, succ_c, sig_c, d, floor);
    else
        out.fit_cond.valid = false;
    out.conversion = conversion_fraction(out.fit, out.fit_cond);
    return out;
}

// Routing of a single-qubit decay event.
void apply_decay(ExtendedQubitState& atom, const ChannelParams& ch,
                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = uni(rng);
    if (u < ch.f_det) {
        atom.status = AtomStatus::leaked_detectable;
    } else if (u < ch.f_det + ch.f_return) {
        // Back in the space with a scrambled state, invisible to imaging.
        atom.amplitude = uni(rng) < 0.5 ? Vector2cd(1.0, 0.0) : Vector2cd(0.0, 1.0);
        atom.status = AtomStatus::computational;
    } else {
        atom.status = AtomStatus::leaked_undetectable_loss;
    }
}

void apply_pauli(Vector2cd& amp, int which) {
    const complex<double> i(0.0, 1.0);
    switch (which) {
        case 0: amp = Vector2cd(amp(1), amp(0)); break;             // X
        case 1: amp = Vector2cd(-i * amp(1), i * amp(0)); break;    // Y
        default: amp = Vector2cd(amp(0), -amp(1)); break;           // Z
    }
}

// One erasure-detection image on a single atom; returns true if it fires.
bool erasure_image(ExtendedQubitState& atom, const ChannelParams& ch,
                   std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    bool fire = false;
    if (atom.status == AtomStatus::leaked_detectable) {
        fire = uni(rng) < ch.imaging.fidelity;
    } else if (atom.status == AtomStatus::computational) {
        if (uni(rng) < ch.imaging.false_positive) fire = true;
        if (uni(rng) < ch.imaging.decay_during_image) apply_decay(atom, ch, rng);
    }
    if (fire) atom.detected = true;
    return fire;
}

}  // namespace

RBResult run_single_qubit_rb(const ChannelParams& channel,
                             const std::vector<int>& lengths, int erasure_period,
                             int shots, std::uint64_t seed) {
    channel.validate();
    if (erasure_period < 1) throw std::invalid_argument("erasure_period must be >= 1");
    for (int m : lengths)
        if (m < 1 || m > 300) throw std::invalid_argument("sequence length must be in [1,300]");

    const auto& group = clifford_group();
    std::vector<std::vector<ShotRecord>> records(lengths.size());
    for (auto& r : records) r.resize(static_cast<std::size_t>(shots));

    parallel_for(lengths.size() * static_cast<std::size_t>(shots), [&](std::size_t idx) {
        const std::size_t li = idx / static_cast<std::size_t>(shots);
        const std::size_t si = idx % static_cast<std::size_t>(shots);
        const int m = lengths[li];
        std::mt19937_64 rng = make_engine(seed, idx);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<int> pick(0, 23);
        std::uniform_int_distribution<int> pauli(0, 2);

        ExtendedQubitState atom;
        int composed = 0;  // identity
        for (int g = 1; g <= m; ++g) {
            const int ci = pick(rng);
            composed = clifford_compose(ci, composed);
            if (atom.status == AtomStatus::computational) {
                atom.amplitude = group[static_cast<std::size_t>(ci)] * atom.amplitude;
                const double u = uni(rng);
                if (u < channel.p_decay) {
                    apply_decay(atom, channel, rng);
                } else if (u < channel.p_decay + channel.p_pauli) {
                    apply_pauli(atom.amplitude, pauli(rng));
                }
            }
            if (g % erasure_period == 0 || g == m) erasure_image(atom, channel, rng);
        }
        ShotRecord rec;
        rec.detected = atom.detected;
        if (atom.status == AtomStatus::computational) {
            const int inv = clifford_inverse_index(group[static_cast<std::size_t>(composed)]);
            atom.amplitude = group[static_cast<std::size_t>(inv)] * atom.amplitude;
            const double p0 = std::norm(atom.amplitude(0)) / atom.amplitude.squaredNorm();
            rec.success = uni(rng) < p0;
        } else {
            // A leaked or lost atom reads dark, matching the target outcome
            // half the time.
            rec.success = uni(rng) < 0.5;
        }
        records[li][si] = rec;
    });

    return finalize_rb(lengths, records, 2, 0.5);
}

TwoQubitChannel TwoQubitChannel::ideal() {
    TwoQubitChannel ch;
    GateChannelSample s;
    s.u[0] = 1.0;
    s.u[1] = 1.0;
    s.u[2] = -1.0;
    ch.pool.push_back(s);
    return ch;
}

TwoQubitChannel TwoQubitChannel::from_samples(std::vector<GateChannelSample> samples,
                                              double theta0, double theta1,
                                              const BranchingRatios& branching,
                                              const ImagingParams& imaging) {
    if (samples.empty()) throw std::invalid_argument("empty channel sample pool");
    const complex<double> f0 = std::polar(1.0, -theta0);
    const complex<double> f1 = std::polar(1.0, -theta1);
    for (auto& s : samples) {
        s.u[0] *= f0;
        s.u[1] *= f0 * f1;
        s.u[2] *= f0 * f1 * f1;
    }
    TwoQubitChannel ch;
    ch.pool = std::move(samples);
    ch.branching = branching;
    ch.imaging = imaging;
    return ch;
}

double TwoQubitChannel::mean_gate_error() const {
    // Global rotations cannot distinguish |01> from |10>, so the channel the
    // benchmark probes lives on the three-dimensional symmetric subspace
    // {|00>, (|01>+|10>)/sqrt(2), |11>}. Average gate fidelity there (d = 3):
    // F = (sum_k |m_k|^2 + |sum_k m_k|^2) / (d (d+1)) with the frame-aligned
    // diagonal m = (u00, u01, -u11).
    double e = 0.0;
    for (const auto& s : this->pool) {
        const complex<double> m[3] = {s.u[0], s.u[1], -s.u[2]};
        const double pops = std::norm(m[0]) + std::norm(m[1]) + std::norm(m[2]);
        const double coh = std::norm(m[0] + m[1] + m[2]);
        e += 1.0 - (pops + coh) / 12.0;
    }
    return e / static_cast<double>(pool.size());
}

namespace {

// Global single-qubit rotations used between CZ gates.
const std::vector<Matrix2c>& rotation_set() {
    static const std::vector<Matrix2c> set = [] {
        const complex<double> i(0.0, 1.0);
        auto rot = [&](double angle, bool about_y) {
            Matrix2c m;
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            if (about_y) m << c, -s, s, c;
            else m << c, -i * s, -i * s, c;
            return m;
        };
        return std::vector<Matrix2c>{
            Matrix2c::Identity(),
            rot(M_PI / 2, false), rot(-M_PI / 2, false),
            rot(M_PI / 2, true), rot(-M_PI / 2, true),
            rot(M_PI, false), rot(M_PI, true)};
    }();
    return set;
}

Matrix4cd kron2(const Matrix2c& a) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * a;
    return out;
}

const Matrix4cd& cz_matrix() {
    static const Matrix4cd cz = [] {
        Matrix4cd m = Matrix4cd::Identity();
        m(3, 3) = -1.0;
        return m;
    }();
    return cz;
}

// Block index per computational basis state |00>, |01>, |10>, |11>.
constexpr int kBlockOf[4] = {0, 1, 1, 2};

enum class PairStatus { coherent, leaked_detectable, leaked_loss };

struct PairState {
    Vector4cd psi{1.0, 0.0, 0.0, 0.0};
    PairStatus status = PairStatus::coherent;
    bool detected = false;
};

// Applies one pooled noisy CZ realization; updates the trajectory.
void apply_noisy_cz(PairState& st, const GateChannelSample& s,
                    const BranchingRatios& br, std::mt19937_64& rng) {
    if (st.status != PairStatus::coherent) return;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const complex<double> mult[4] = {s.u[0], s.u[1], s.u[1], s.u[2]};
    double p_leak = 0.0;
    Vector4cd out;
    for (int b = 0; b < 4; ++b) {
        const int blk = kBlockOf[b];
        p_leak += std::norm(st.psi(b)) * (s.p_decay[blk] + s.p_end_ryd[blk]);
        out(b) = st.psi(b) * mult[b];
    }
    const double p_coh = out.squaredNorm();
    const double total = p_coh + p_leak;
    if (uni(rng) * total < p_leak) {
        // All Rydberg leakage is recaptured and decays during the wait; route
        // through the post-repump branching table.
        const double u = uni(rng);
        if (u < br.post_repump_1s0) {
            st.status = PairStatus::leaked_detectable;
        } else if (u < br.post_repump_1s0 + br.post_repump_3p0) {
            // Silent return to the computational space with a scrambled state.
            st.psi.setZero();
            st.psi(std::uniform_int_distribution<int>(0, 3)(rng)) = 1.0;
        } else {
            st.status = PairStatus::leaked_loss;
        }
    } else {
        st.psi = out / std::sqrt(p_coh);
    }
}

void pair_erasure_image(PairState& st, const BranchingRatios& br,
                        const ImagingParams& imaging, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    bool fire = false;
    if (st.status == PairStatus::leaked_detectable) {
        fire = uni(rng) < imaging.fidelity;
    } else if (st.status == PairStatus::coherent) {
        // Two atoms imaged: two false-positive chances, plus metastable decay
        // during the imaging window.
        if (uni(rng) < 1.0 - std::pow(1.0 - imaging.false_positive, 2)) fire = true;
        if (uni(rng) < 2.0 * imaging.decay_during_image) {
            const double u = uni(rng);
            if (u < br.post_repump_1s0) st.status = PairStatus::leaked_detectable;
            else if (u < br.post_repump_1s0 + br.post_repump_3p0) { /* silent */ }
            else st.status = PairStatus::leaked_loss;
        }
    }
    if (fire) st.detected = true;
}

}  // namespace

RBResult run_two_qubit_rb(const TwoQubitChannel& channel,
                          const std::vector<int>& lengths, int erasure_period,
                          int shots, std::uint64_t seed) {
    if (channel.pool.empty()) throw std::invalid_argument("empty channel pool");
    if (erasure_period < 1) throw std::invalid_argument("erasure_period must be >= 1");
    for (int m : lengths)
        if (m < 1 || m > 10) throw std::invalid_argument("two-qubit lengths are <= 10 CZ gates");

    std::vector<std::vector<ShotRecord>> records(lengths.size());
    for (auto& r : records) r.resize(static_cast<std::size_t>(shots));
    const auto& rotations = rotation_set();

    parallel_for(lengths.size() * static_cast<std::size_t>(shots), [&](std::size_t idx) {
        const std::size_t li = idx / static_cast<std::size_t>(shots);
        const std::size_t si = idx % static_cast<std::size_t>(shots);
        const int m = lengths[li];
        std::mt19937_64 rng = make_engine(seed, idx);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<int> pick_rot(0, static_cast<int>(rotations.size()) - 1);
        std::uniform_int_distribution<std::size_t> pick_sample(0, channel.pool.size() - 1);

        PairState st;
        Vector4cd ideal(1.0, 0.0, 0.0, 0.0);
        // One noise realization per circuit: the dominant noise (Doppler,
        // intensity) is quasi-static over a sequence, so coherent errors add
        // up across the gates of a shot instead of averaging out.
        const GateChannelSample& gate = channel.pool[pick_sample(rng)];
        for (int g = 1; g <= m; ++g) {
            const Matrix4cd rot = kron2(rotations[static_cast<std::size_t>(pick_rot(rng))]);
            ideal = cz_matrix() * (rot * ideal);
            if (st.status == PairStatus::coherent) st.psi = rot * st.psi;
            apply_noisy_cz(st, gate, channel.branching, rng);
            if (g % erasure_period == 0 || g == m)
                pair_erasure_image(st, channel.branching, channel.imaging, rng);
        }
        ShotRecord rec;
        rec.detected = st.detected;
        if (st.status == PairStatus::coherent) {
            const double overlap = std::norm(ideal.dot(st.psi));
            rec.success = uni(rng) < overlap;
        } else {
            // Erasure detection flags leaked pairs; flagged or lost shots are
            // scored as failures in the success counts.
            rec.success = false;
        }
        records[li][si] = rec;
    });

    // Global rotations confine both the ideal and the simulated state to the
    // symmetric subspace, so a fully scrambled surviving pair still overlaps
    // the ideal outcome with probability 1/3, not 1/4.
    return finalize_rb(lengths, records, 4, 1.0 / 3.0);
}

BiasResult erasure_bias_experiment(const TwoQubitChannel& channel, BiasInitial initial,
                                   int n_gates, int shots, std::uint64_t seed) {
    if (n_gates < 2 || n_gates > 18)
        throw std::invalid_argument("bias experiment supports 2..18 gates");
    if (channel.pool.empty()) throw std::invalid_argument("empty channel pool");

    std::vector<int> checks;
    for (int g = 2; g <= n_gates; g += 2) checks.push_back(g);

    // detected_by[c][shot]: erasure flagged at or before check c.
    std::vector<std::vector<char>> detected_by(checks.size());
    for (auto& v : detected_by) v.resize(static_cast<std::size_t>(shots));

    parallel_for(static_cast<std::size_t>(shots), [&](std::size_t si) {
        std::mt19937_64 rng = make_engine(seed, si);
        std::uniform_int_distribution<std::size_t> pick_sample(0, channel.pool.size() - 1);
        PairState st;
        switch (initial) {
            case BiasInitial::zz: st.psi = Vector4cd(1, 0, 0, 0); break;
            case BiasInitial::pp: st.psi = Vector4cd(0.5, 0.5, 0.5, 0.5); break;
            case BiasInitial::oo: st.psi = Vector4cd(0, 0, 0, 1); break;
        }
        std::size_t ci = 0;
        const GateChannelSample& gate = channel.pool[pick_sample(rng)];
        for (int g = 1; g <= n_gates; ++g) {
            apply_noisy_cz(st, gate, channel.branching, rng);
            if (g % 2 == 0) {
                pair_erasure_image(st, channel.branching, channel.imaging, rng);
                detected_by[ci][si] = st.detected ? 1 : 0;
                ++ci;
            }
        }
    });

    BiasResult out;
    std::vector<double> xs, ys, sig;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        long n = 0;
        for (char d : detected_by[c]) n += d;
        BiasPoint p;
        p.gates = checks[c];
        p.detected = static_cast<double>(n) / shots;
        p.detected_stderr =
            std::sqrt(std::max(p.detected * (1.0 - p.detected), 0.25 / shots) / shots);
        out.points.push_back(p);
        xs.push_back(p.gates);
        ys.push_back(p.detected);
        sig.push_back(p.detected_stderr);
    }
    const LineFit line = fit_line(xs, ys, sig);
    out.per_gate = line.slope;
    out.slope_positive = line.slope.value > line.slope.stderr_;
    return out;
}

FitValue erasure_bias_ratio(const BiasResult& numerator, const BiasResult& denominator) {
    FitValue r;
    const double a = numerator.per_gate.value;
    const double b = denominator.per_gate.value;
    if (b <= 0.0) {
        // Zero (or negative) denominator slope: report the ratio against the
        // 1-sigma upper bound of the denominator as a lower bound.
        const double bound = std::max(denominator.per_gate.stderr_, 1e-12);
        return {a / bound, 0.0};
    }
    r.value = a / b;
    r.stderr_ = r.value * std::sqrt(std::pow(numerator.per_gate.stderr_ / a, 2) +
                                    std::pow(denominator.per_gate.stderr_ / b, 2));
    return r;
}

CountModel default_count_model() { return {}; }

ThresholdSweep detection_threshold_sweep(const CountModel& counts,
                                         const ChannelParams& channel, int shots,
                                         std::uint64_t seed) {
    channel.validate();
    const std::vector<int> lengths = {50, 100, 150, 200, 250, 300};
    const int erasure_period = 50;

    struct SweepShot {
        int length_index = 0;
        bool error = false;
        std::vector<double> check_counts;
    };
    std::vector<SweepShot> data(lengths.size() * static_cast<std::size_t>(shots));
    const auto& group = clifford_group();

    parallel_for(data.size(), [&](std::size_t idx) {
        const std::size_t li = idx / static_cast<std::size_t>(shots);
        const int m = lengths[li];
        std::mt19937_64 rng = make_engine(seed, idx);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<int> pick(0, 23);
        std::uniform_int_distribution<int> pauli(0, 2);
        std::normal_distribution<double> absent(counts.mu_absent, counts.sigma_absent);
        std::normal_distribution<double> present(counts.mu_present, counts.sigma_present);

        SweepShot shot;
        shot.length_index = static_cast<int>(li);
        ExtendedQubitState atom;
        int composed = 0;
        for (int g = 1; g <= m; ++g) {
            const int ci = pick(rng);
            composed = clifford_compose(ci, composed);
            if (atom.status == AtomStatus::computational) {
                atom.amplitude = group[static_cast<std::size_t>(ci)] * atom.amplitude;
                const double u = uni(rng);
                if (u < channel.p_decay) apply_decay(atom, channel, rng);
                else if (u < channel.p_decay + channel.p_pauli)
                    apply_pauli(atom.amplitude, pauli(rng));
            }
            if (g % erasure_period == 0 || g == m) {
                // Raw camera counts; thresholding is applied in post-processing.
                const bool ground = atom.status == AtomStatus::leaked_detectable;
                shot.check_counts.push_back(ground ? present(rng) : absent(rng));
                if (atom.status == AtomStatus::computational &&
                    uni(rng) < channel.imaging.decay_during_image)
                    apply_decay(atom, channel, rng);
            }
        }
        if (atom.status == AtomStatus::computational) {
            const int inv = clifford_inverse_index(group[static_cast<std::size_t>(composed)]);
            atom.amplitude = group[static_cast<std::size_t>(inv)] * atom.amplitude;
            const double p0 = std::norm(atom.amplitude(0)) / atom.amplitude.squaredNorm();
            shot.error = uni(rng) >= p0;
        } else {
            shot.error = true;
        }
        data[idx] = std::move(shot);
    });

    ThresholdSweep sweep;
    const double lo = counts.mu_absent - 3.0 * counts.sigma_absent;
    const double hi = counts.mu_present + 3.0 * counts.sigma_present;
    const int grid = 60;
    double best_re = 0.0;
    for (int t = 0; t <= grid; ++t) {
        const double threshold = lo + (hi - lo) * t / grid;
        long n_det = 0, n_det_err = 0;
        std::vector<std::vector<ShotRecord>> records(lengths.size());
        for (const auto& shot : data) {
            bool det = false;
            for (double c : shot.check_counts)
                if (c > threshold) det = true;
            if (det) {
                ++n_det;
                if (shot.error) ++n_det_err;
            }
            ShotRecord rec;
            rec.success = !shot.error;
            rec.detected = det;
            records[static_cast<std::size_t>(shot.length_index)].push_back(rec);
        }
        ThresholdPoint p;
        p.threshold = threshold;
        p.p_err_given_det = n_det > 0 ? static_cast<double>(n_det_err) / n_det : 0.0;
        bool have_kept = true;
        for (const auto& r : records) {
            long kept = 0;
            for (const auto& s : r) kept += !s.detected;
            if (kept < 10) have_kept = false;
        }
        if (have_kept) {
            const RBResult rb = finalize_rb(lengths, records, 2, 0.5);
            p.r_e = rb.conversion.value;
        } else {
            p.r_e = 0.0;
        }
        if (p.p_err_given_det > 0.9) best_re = std::max(best_re, p.r_e);
        sweep.points.push_back(p);
    }
    // Plateau: R_e within 2% of its maximum while P(err|det) > 0.9. The
    // reference maximum is taken over the same high-purity region; at low
    // thresholds false positives censor most shots and bias the fit.
    for (const auto& p : sweep.points) {
        if (p.r_e >= best_re - 0.02 * std::abs(best_re) && p.p_err_given_det > 0.9) {
            if (!sweep.plateau_found) sweep.plateau_lo = p.threshold;
            sweep.plateau_hi = p.threshold;
            sweep.plateau_found = true;
        }
    }
    return sweep;
}

}  // namespace ryd
