// Command-line driver: pulse optimization, error budgets, benchmarking
// simulations and dataset fits, all seeded and reproducible.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rydsim/blockade.hpp"
#include "rydsim/grape.hpp"
#include "rydsim/io.hpp"
#include "rydsim/noise.hpp"
#include "rydsim/pulse.hpp"
#include "rydsim/rb.hpp"
#include "rydsim/spam.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ryd;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Calibrated shortest duration reaching infidelity below 1e-5 at the
// experimental drive parameters (detuning ratio 5.8).
constexpr double kDefaultDuration = 9.5493e-7;  // Omega * T = 9.6

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ConfigMap preset_config(const std::string& name) {
    ConfigMap c;
    if (name == "fig4a-defaults") {
        // Pulse synthesis at the experimental drive parameters.
        c["omega"] = "1.0053096491487338e7";     // 2 pi x 1.6 MHz
        c["delta_r"] = "5.843362335612644e7";    // 2 pi x 9.3 MHz
        c["n_pieces"] = "100";
        c["restarts"] = "20";
    } else if (name == "fig4c-defaults") {
        // Gate noise model at the measured parameters.
        c["t1r"] = "65e-6";
        c["t2star"] = "5.7e-6";
        c["intensity_rms"] = "0.01";
        c["envelope_amp"] = "0.04";
        c["envelope_tau"] = "2.0e-7";
        c["shots"] = "4000";
    } else if (name == "fig2e-defaults") {
        // Single-qubit benchmarking with the calibrated per-gate channel.
        c["channel"] = "calibrated";
        c["lengths"] = "20,60,100,140,180,220,260,300";
        c["erasure_period"] = "10";
        c["shots"] = "20000";
    } else if (name == "fig4e-defaults") {
        c["t1r"] = "65e-6";
        c["t2star"] = "5.7e-6";
        c["intensity_rms"] = "0.01";
        c["envelope_amp"] = "0.04";
        c["envelope_tau"] = "2.0e-7";
        c["n_gates"] = "18";
        c["shots"] = "20000";
    } else if (!name.empty()) {
        throw ConfigError("unknown preset \"" + name + "\"");
    }
    return c;
}

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    long shots = -1;
    bool seed_set = false;
    bool shots_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "key = value run configuration file");
    cmd->add_option("--preset", a.preset, "built-in parameter set, e.g. fig4a-defaults");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--seed", a.seed, "master random seed")
        ->each([&](const std::string&) { a.seed_set = true; });
    cmd->add_option("--shots", a.shots, "Monte Carlo shots")
        ->each([&](const std::string&) { a.shots_set = true; });
}

// Preset under file under flags; flags win.
ConfigMap resolve_config(const CommonArgs& a) {
    ConfigMap c = preset_config(a.preset);
    if (!a.config_path.empty())
        for (const auto& [k, v] : parse_config_file(a.config_path)) c[k] = v;
    if (a.seed_set) c["seed"] = std::to_string(a.seed);
    if (a.shots_set) c["shots"] = std::to_string(a.shots);
    return c;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("config key \"" + key + "\": bad integer list");
        }
    }
    if (out.empty()) throw ConfigError("config key \"" + key + "\": empty list");
    return out;
}

GateParams gate_params_from(const ConfigMap& c) {
    GateParams p;
    if (!c.count("omega")) throw ConfigError("missing config key \"omega\"");
    p.omega = config_double(c, "omega", 0.0);
    p.delta_r = config_double(c, "delta_r", 5.8 * p.omega);
    p.delta_m = config_double(c, "delta_m", 0.0);
    p.duration = config_double(c, "duration", kDefaultDuration);
    const std::string v = config_string(c, "blockade", "inf");
    p.blockade = v == "inf" ? std::numeric_limits<double>::infinity()
                            : config_double(c, "blockade", 0.0);
    p.validate();
    return p;
}

NoiseConfig noise_config_from(const ConfigMap& c) {
    NoiseConfig n;
    n.t1r = config_double(c, "t1r", n.t1r);
    n.t2star = config_double(c, "t2star", n.t2star);
    n.intensity_rms = config_double(c, "intensity_rms", n.intensity_rms);
    n.envelope_distortion_amp = config_double(c, "envelope_amp", 0.0);
    n.envelope_distortion_tau = config_double(c, "envelope_tau", 0.0);
    const std::string psd = config_string(c, "phase_psd", "");
    n.phase_psd = psd.empty() ? default_phase_psd() : read_psd_table(psd);
    n.shots = static_cast<int>(config_long(c, "shots", n.shots));
    n.seed = static_cast<std::uint64_t>(config_long(c, "seed", 1));
    n.validate();
    return n;
}

ChannelParams channel_from(const ConfigMap& c) {
    ChannelParams ch = calibrated_single_qubit_channel();
    const std::string kind = config_string(c, "channel", "calibrated");
    if (kind == "lifetime") {
        ch = channel_from_lifetime(config_double(c, "gamma_m", 1.0 / 2.96),
                                   config_double(c, "clifford_duration", 1.875e-3));
    } else if (kind != "calibrated") {
        throw ConfigError("config key \"channel\": must be calibrated or lifetime");
    }
    if (c.count("p_decay")) ch.p_decay = config_double(c, "p_decay", 0.0);
    if (c.count("f_det")) ch.f_det = config_double(c, "f_det", 0.0);
    if (c.count("f_return")) ch.f_return = config_double(c, "f_return", 0.0);
    if (c.count("p_pauli")) ch.p_pauli = config_double(c, "p_pauli", 0.0);
    ch.validate();
    return ch;
}

// Loads a pulse and rebuilds the blockaded model around it.
std::pair<Pulse, BlockadeModel> load_gate(const ConfigMap& c) {
    const std::string path = config_string(c, "pulse", "");
    if (path.empty()) throw ConfigError("missing config key \"pulse\" (pulse table path)");
    if (!fs::exists(path)) throw ConfigError("pulse file not found: " + path);
    Pulse pulse = read_pulse_table(path);
    GateParams p;
    p.omega = pulse.omega;
    p.delta_r = config_double(c, "delta_r", 5.8 * pulse.omega);
    p.delta_m = config_double(c, "delta_m", 0.0);
    p.duration = pulse.duration;
    const std::string v = config_string(c, "blockade", "inf");
    p.blockade = v == "inf" ? std::numeric_limits<double>::infinity()
                            : config_double(c, "blockade", 0.0);
    p.validate();
    return {std::move(pulse), build_blockade_model(p)};
}

fs::path out_path(const CommonArgs& a, const std::string& name) {
    fs::create_directories(a.out_dir);
    return fs::path(a.out_dir) / name;
}

int cmd_optimize(const CommonArgs& args) {
    const ConfigMap c = resolve_config(args);
    reject_unknown_keys(c, {"omega", "delta_r", "delta_m", "duration", "blockade",
                            "n_pieces", "edge_sigma", "restarts", "max_iterations",
                            "target_infidelity", "chebyshev_nmax", "seed", "shots"});
    const GateParams params = gate_params_from(c);
    const int n_pieces = static_cast<int>(config_long(c, "n_pieces", 100));
    const double edge_sigma =
        config_double(c, "edge_sigma", params.duration / 20.0);
    const std::uint64_t seed = static_cast<std::uint64_t>(config_long(c, "seed", 1));

    OptimizerConfig oc;
    oc.restarts = static_cast<int>(config_long(c, "restarts", oc.restarts));
    oc.max_iterations =
        static_cast<int>(config_long(c, "max_iterations", oc.max_iterations));
    oc.target_infidelity =
        config_double(c, "target_infidelity", oc.target_infidelity);

    const OptimizationResult res = optimize(params, n_pieces, edge_sigma, seed, oc);
    const int n_max = static_cast<int>(config_long(c, "chebyshev_nmax", 13));
    const ChebyshevRefit refit = chebyshev_refit(res.pulse, n_max);

    // Infidelity of the refit pulse, same piece grid.
    const BlockadeModel model = build_blockade_model(params);
    const Pulse refit_pulse = detuning_to_phase(refit.detuning, n_pieces,
                                                res.pulse.omega, res.pulse.duration,
                                                res.pulse.edge_sigma);
    const double refit_infidelity =
        1.0 - cz_fidelity(block_overlaps(model, refit_pulse)).fidelity;

    write_pulse_table(out_path(args, "pulse.tsv").string(), res.pulse);
    {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < refit.detuning.coeffs.size(); ++i)
            rows.push_back({static_cast<double>(i), refit.detuning.coeffs[i]});
        write_table(out_path(args, "chebyshev.tsv").string(), {"n", "c_n_rad_per_s"},
                    rows);
    }
    json doc = make_summary(c, seed);
    doc["infidelity"] = res.infidelity;
    doc["theta1"] = res.theta1;
    doc["iterations"] = res.iterations;
    doc["converged"] = res.converged;
    doc["restart"] = res.restart;
    doc["chebyshev_nmax"] = n_max;
    doc["chebyshev_residual_rms"] = refit.residual_rms;
    doc["refit_infidelity"] = refit_infidelity;
    write_summary(out_path(args, "optimize_summary.json").string(), doc);

    std::cout << "infidelity " << res.infidelity << " (refit " << refit_infidelity
              << "), theta1 " << res.theta1 << "\n";
    return res.converged ? 0 : 2;
}

int cmd_error_budget(const CommonArgs& args) {
    const ConfigMap c = resolve_config(args);
    reject_unknown_keys(c, {"pulse", "delta_r", "delta_m", "blockade", "t1r",
                            "t2star", "intensity_rms", "envelope_amp",
                            "envelope_tau", "phase_psd", "shots", "seed"});
    auto [pulse, model] = load_gate(c);
    const NoiseConfig nc = noise_config_from(c);

    const ErrorBudget budget = error_budget(pulse, model, nc);
    std::vector<std::vector<double>> rows;
    json doc = make_summary(c, nc.seed);
    json jrows = json::array();
    auto add_row = [&](const std::string& name, const GateErrorReport& r) {
        json j;
        j["source"] = name;
        j["error"] = r.total_error;
        j["stderr"] = r.total_error_stderr;
        j["leakage_error"] = r.leakage_error;
        j["leakage_fraction"] = leakage_fraction(r);
        jrows.push_back(j);
    };
    for (const auto& [name, report] : budget.rows) add_row(name, report);
    add_row("combined", budget.combined);
    doc["rows"] = jrows;
    const DetectableSplit split = detectable_split(budget.combined, nc);
    doc["detectable_erasure"] = split.detectable_erasure;
    doc["returned_undetected"] = split.returned_undetected;
    doc["undetectable_loss"] = split.undetectable_loss;
    write_summary(out_path(args, "error_budget.json").string(), doc);

    for (const auto& r : jrows)
        std::cout << r["source"].get<std::string>() << "\t"
                  << r["error"].get<double>() << " +- "
                  << r["stderr"].get<double>() << "\n";
    if (budget.combined.wide_confidence) {
        std::cerr << "error bars comparable to the estimates; increase shots\n";
        return 2;
    }
    return 0;
}

void write_rb_outputs(const CommonArgs& args, const ConfigMap& c, std::uint64_t seed,
                      const RBResult& res, const std::string& stem) {
    std::vector<std::vector<double>> rows;
    for (const auto& p : res.curve)
        rows.push_back({p.length, p.success, p.success_stderr, p.success_cond,
                        p.success_cond_stderr, static_cast<double>(p.shots_kept)});
    write_table(out_path(args, stem + "_curve.tsv").string(),
                {"length", "success", "stderr", "success_cond", "stderr_cond",
                 "shots_kept"},
                rows);
    json doc = make_summary(c, seed);
    auto fv = [](const FitValue& v) {
        return json{{"value", v.value}, {"stderr", v.stderr_}};
    };
    doc["epsilon"] = fv(res.fit.error_rate);
    doc["epsilon_conditioned"] = fv(res.fit_cond.error_rate);
    doc["conversion_fraction"] = fv(res.conversion);
    doc["fit_valid"] = res.fit.valid && res.fit_cond.valid;
    write_summary(out_path(args, stem + "_summary.json").string(), doc);
    std::cout << "epsilon " << res.fit.error_rate.value << "("
              << res.fit.error_rate.stderr_ << ")  conditioned "
              << res.fit_cond.error_rate.value << "  R_e "
              << res.conversion.value << "(" << res.conversion.stderr_ << ")\n";
}

TwoQubitChannel build_gate_channel(const ConfigMap& c) {
    if (config_string(c, "pulse", "") == "ideal") return TwoQubitChannel::ideal();
    auto [pulse, model] = load_gate(c);
    NoiseConfig nc = noise_config_from(c);
    const int pool = static_cast<int>(config_long(c, "channel_pool", 2000));
    // Frame from the ideal pulse fixes theta0/theta1 for all realizations.
    const CZOverlaps ideal = block_overlaps(model, pulse);
    const CZFidelity fid = cz_fidelity(ideal);
    const double theta0 = std::arg(ideal.u00);
    const auto samples =
        sample_gate_channel(pulse, model, nc, SourceToggles::all(), pool);
    return TwoQubitChannel::from_samples(samples, theta0, fid.theta1, nc.branching);
}

int cmd_rb(const CommonArgs& args, const std::string& mode) {
    const ConfigMap c = resolve_config(args);
    const std::uint64_t seed = static_cast<std::uint64_t>(config_long(c, "seed", 1));
    const int shots = static_cast<int>(config_long(c, "shots", 20000));

    if (mode == "single") {
        reject_unknown_keys(c, {"channel", "gamma_m", "clifford_duration", "p_decay",
                                "f_det", "f_return", "p_pauli", "lengths",
                                "erasure_period", "shots", "seed"});
        const ChannelParams ch = channel_from(c);
        const auto lengths =
            parse_int_list(config_string(c, "lengths", "20,60,100,140,180,220,260,300"),
                           "lengths");
        const int period = static_cast<int>(config_long(c, "erasure_period", 10));
        const RBResult res = run_single_qubit_rb(ch, lengths, period, shots, seed);
        write_rb_outputs(args, c, seed, res, "rb_single");
        return res.fit.valid && res.fit_cond.valid ? 0 : 2;
    }
    if (mode == "two") {
        reject_unknown_keys(c, {"pulse", "delta_r", "delta_m", "blockade", "t1r",
                                "t2star", "intensity_rms", "envelope_amp",
                                "envelope_tau", "phase_psd", "channel_pool",
                                "lengths", "erasure_period", "shots", "seed"});
        const TwoQubitChannel ch = build_gate_channel(c);
        const auto lengths =
            parse_int_list(config_string(c, "lengths", "1,2,3,4,5,6,7,8"), "lengths");
        const int period = static_cast<int>(config_long(c, "erasure_period", 2));
        const RBResult res = run_two_qubit_rb(ch, lengths, period, shots, seed);
        write_rb_outputs(args, c, seed, res, "rb_two");
        json extra = make_summary(c, seed);
        extra["mean_gate_error"] = ch.mean_gate_error();
        write_summary(out_path(args, "rb_two_channel.json").string(), extra);
        return res.fit.valid && res.fit_cond.valid ? 0 : 2;
    }
    if (mode == "bias") {
        reject_unknown_keys(c, {"pulse", "delta_r", "delta_m", "blockade", "t1r",
                                "t2star", "intensity_rms", "envelope_amp",
                                "envelope_tau", "phase_psd", "channel_pool",
                                "n_gates", "shots", "seed"});
        const TwoQubitChannel ch = build_gate_channel(c);
        const int n_gates = static_cast<int>(config_long(c, "n_gates", 18));
        const BiasResult p11 =
            erasure_bias_experiment(ch, BiasInitial::oo, n_gates, shots, seed);
        const BiasResult p00 =
            erasure_bias_experiment(ch, BiasInitial::zz, n_gates, shots, seed + 1);
        const FitValue ratio = erasure_bias_ratio(p11, p00);

        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < p11.points.size(); ++i)
            rows.push_back({static_cast<double>(p11.points[i].gates),
                            p11.points[i].detected, p11.points[i].detected_stderr,
                            p00.points[i].detected, p00.points[i].detected_stderr});
        write_table(out_path(args, "bias_curve.tsv").string(),
                    {"gates", "detected_11", "stderr_11", "detected_00",
                     "stderr_00"},
                    rows);
        json doc = make_summary(c, seed);
        doc["p11_per_gate"] = {{"value", p11.per_gate.value},
                               {"stderr", p11.per_gate.stderr_}};
        doc["p00_per_gate"] = {{"value", p00.per_gate.value},
                               {"stderr", p00.per_gate.stderr_}};
        doc["ratio"] = {{"value", ratio.value}, {"stderr", ratio.stderr_}};
        write_summary(out_path(args, "bias_summary.json").string(), doc);
        std::cout << "p11/gate " << p11.per_gate.value << "  p00/gate "
                  << p00.per_gate.value << "  ratio " << ratio.value << "("
                  << ratio.stderr_ << ")\n";
        return 0;
    }
    if (mode == "threshold") {
        reject_unknown_keys(c, {"channel", "gamma_m", "clifford_duration", "p_decay",
                                "f_det", "f_return", "p_pauli", "mu_absent",
                                "mu_present", "sigma_counts", "shots", "seed"});
        const ChannelParams ch = channel_from(c);
        CountModel counts = default_count_model();
        counts.mu_absent = config_double(c, "mu_absent", counts.mu_absent);
        counts.mu_present = config_double(c, "mu_present", counts.mu_present);
        counts.sigma_absent = config_double(c, "sigma_counts", counts.sigma_absent);
        counts.sigma_present = counts.sigma_absent;
        const ThresholdSweep sweep = detection_threshold_sweep(counts, ch, shots, seed);
        std::vector<std::vector<double>> rows;
        for (const auto& p : sweep.points)
            rows.push_back({p.threshold, p.r_e, p.p_err_given_det});
        write_table(out_path(args, "threshold_sweep.tsv").string(),
                    {"threshold", "conversion_fraction", "p_err_given_det"}, rows);
        json doc = make_summary(c, seed);
        doc["plateau_found"] = sweep.plateau_found;
        doc["plateau_lo"] = sweep.plateau_lo;
        doc["plateau_hi"] = sweep.plateau_hi;
        write_summary(out_path(args, "threshold_summary.json").string(), doc);
        return 0;
    }
    throw ConfigError("rb mode must be one of single, two, bias, threshold");
}

BellMeasurement parse_bell_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open dataset " + path);
    BellMeasurement meas;
    std::string line;
    int lineno = 0;
    bool have00 = false, have11 = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string tag;
        row >> tag;
        auto fail = [&] {
            throw ConfigError("dataset line " + std::to_string(lineno) +
                              ": malformed \"" + tag + "\" row");
        };
        if (tag == "p00" || tag == "p11" || tag == "pnl") {
            FitValue v;
            if (!(row >> v.value >> v.stderr_)) fail();
            if (tag == "p00") { meas.p00 = v; have00 = true; }
            else if (tag == "p11") { meas.p11 = v; have11 = true; }
            else meas.p_nl = v;
        } else if (tag == "ptp") {
            if (!(row >> meas.p_tp)) fail();
        } else if (tag == "pfp") {
            if (!(row >> meas.p_fp)) fail();
        } else if (tag == "parity") {
            ParityPoint p;
            if (!(row >> p.theta >> p.p_bb >> p.stderr_)) fail();
            meas.parity.push_back(p);
        } else {
            throw ConfigError("dataset line " + std::to_string(lineno) +
                              ": unknown row tag \"" + tag + "\"");
        }
    }
    if (!have00 || !have11 || meas.parity.size() < 5)
        throw ConfigError("dataset needs p00, p11 and at least 5 parity rows");
    return meas;
}

int cmd_analyze(const CommonArgs& args, const std::string& kind,
                const std::string& dataset) {
    const ConfigMap c = resolve_config(args);
    reject_unknown_keys(c, {"seed", "shots"});
    json doc = make_summary(c, 0);
    auto fv = [](const FitValue& v) {
        return json{{"value", v.value}, {"stderr", v.stderr_}};
    };
    if (kind == "bell") {
        const BellMeasurement meas = parse_bell_dataset(dataset);
        const BellFidelity fid = bell_fidelity(meas);
        const SpamBound bound =
            spam_lower_bound(std::min(fid.corrected.value, 1.0), meas.p_tp, meas.p_fp);
        doc["coherence"] = fv(fid.coherence);
        doc["fidelity_raw"] = fv(fid.raw);
        doc["fidelity_corrected"] = fv(fid.corrected);
        doc["corrected_above_one"] = fid.above_one;
        doc["readout_bound_tp1"] = bound.tp_one_bound;
        doc["measured_is_lower_bound"] = bound.measured_is_lower_bound;
        write_summary(out_path(args, "bell_summary.json").string(), doc);
        std::cout << "F_B " << fid.raw.value << "(" << fid.raw.stderr_
                  << ")  corrected " << fid.corrected.value << "("
                  << fid.corrected.stderr_ << ")\n";
        return 0;
    }
    if (kind == "lifetime") {
        std::ifstream in(dataset);
        if (!in) throw ConfigError("cannot open dataset " + dataset);
        std::vector<double> power, rate, sigma;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream row(line);
            double p, r, s;
            if (!(row >> p >> r >> s))
                throw ConfigError("dataset line " + std::to_string(lineno) +
                                  ": expected power rate stderr");
            power.push_back(p);
            rate.push_back(r);
            sigma.push_back(s);
        }
        const LifetimeFit fit = fit_lifetime(power, rate, sigma);
        doc["gamma0"] = fv(fit.gamma0);
        doc["alpha"] = fv(fit.alpha);
        doc["beta"] = fv(fit.beta);
        doc["unphysical"] = fit.unphysical;
        write_summary(out_path(args, "lifetime_summary.json").string(), doc);
        std::cout << "gamma0 " << fit.gamma0.value << "  alpha " << fit.alpha.value
                  << "  beta " << fit.beta.value << "\n";
        return fit.unphysical ? 2 : 0;
    }
    throw ConfigError("analyze kind must be bell or lifetime");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg CZ gate simulation and benchmarking toolkit"};
    app.require_subcommand(1);

    CommonArgs a_opt, a_budget, a_rb, a_an;
    std::string rb_mode, an_kind, an_dataset;

    CLI::App* opt = app.add_subcommand("optimize", "synthesize the gate pulse");
    add_common(opt, a_opt);
    CLI::App* budget = app.add_subcommand("error-budget", "per-source gate errors");
    add_common(budget, a_budget);
    CLI::App* rb = app.add_subcommand("rb", "randomized benchmarking simulations");
    rb->add_option("mode", rb_mode, "single | two | bias | threshold")->required();
    add_common(rb, a_rb);
    CLI::App* an = app.add_subcommand("analyze", "fit a measurement dataset");
    an->add_option("kind", an_kind, "bell | lifetime")->required();
    an->add_option("dataset", an_dataset, "dataset file")->required();
    add_common(an, a_an);

    CLI11_PARSE(app, argc, argv);

    try {
        if (opt->parsed()) return cmd_optimize(a_opt);
        if (budget->parsed()) return cmd_error_budget(a_budget);
        if (rb->parsed()) return cmd_rb(a_rb, rb_mode);
        if (an->parsed()) return cmd_analyze(a_an, an_kind, an_dataset);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
