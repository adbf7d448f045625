#include <cmath>
#include <complex>

#include "doctest.h"
#include "rydsim/rb.hpp"

using namespace ryd;

TEST_CASE("the calibrated single-qubit channel reproduces its error decomposition") {
    const ChannelParams ch = calibrated_single_qubit_channel();
    CHECK_NOTHROW(ch.validate());
    // Always-fail events contribute probability/2 to the average error; the
    // decomposition totals 1.0e-3 per gate.
    const double eps = ch.p_decay / 2.0 + (2.0 / 3.0) * ch.p_pauli;
    CHECK(eps == doctest::Approx(1.0e-3).epsilon(0.01));
    CHECK(ch.f_det == doctest::Approx(0.56 / 0.86).epsilon(1e-6));

    ChannelParams bad = ch;
    bad.p_decay = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ch;
    bad.f_det = 0.9;
    bad.f_return = 0.2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("input validation rejects bad lengths and periods") {
    const ChannelParams ch = calibrated_single_qubit_channel();
    CHECK_THROWS_AS(run_single_qubit_rb(ch, {10}, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_single_qubit_rb(ch, {301}, 10, 10, 1), std::invalid_argument);
    const TwoQubitChannel ideal = TwoQubitChannel::ideal();
    CHECK_THROWS_AS(run_two_qubit_rb(ideal, {11}, 2, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_two_qubit_rb(ideal, {4}, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(erasure_bias_experiment(ideal, BiasInitial::zz, 30, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("zero-noise single-qubit sequences invert exactly at every length") {
    ChannelParams ch;  // all probabilities zero
    ch.imaging.false_positive = 0.0;
    ch.imaging.decay_during_image = 0.0;
    const RBResult rb = run_single_qubit_rb(ch, {20, 100, 300}, 50, 400, 2);
    for (const auto& p : rb.curve) {
        CHECK(p.success == 1.0);
        CHECK(p.success_cond == 1.0);
        CHECK(p.shots_kept == p.shots_total);
    }
    CHECK(rb.fit.error_rate.value < 1e-9);
}

TEST_CASE("the ideal two-qubit channel gives unit success at every length") {
    TwoQubitChannel ch = TwoQubitChannel::ideal();
    ch.imaging.false_positive = 0.0;
    ch.imaging.decay_during_image = 0.0;
    CHECK(ch.mean_gate_error() == doctest::Approx(0.0).scale(1.0));
    const RBResult rb = run_two_qubit_rb(ch, {1, 4, 7, 10}, 2, 400, 3);
    for (const auto& p : rb.curve) CHECK(p.success == 1.0);
    CHECK(rb.fit.error_rate.value < 1e-9);
}

TEST_CASE("frame removal maps a frame-rotated ideal gate to zero error") {
    const double th0 = 0.37, th1 = 1.21;
    GateChannelSample s;
    s.u[0] = std::polar(1.0, th0);
    s.u[1] = std::polar(1.0, th0 + th1);
    s.u[2] = -std::polar(1.0, th0 + 2.0 * th1);
    const TwoQubitChannel ch =
        TwoQubitChannel::from_samples({s}, th0, th1, BranchingRatios{});
    CHECK(ch.mean_gate_error() < 1e-12);
}

TEST_CASE("a pure controlled-phase miscalibration raises the symmetric-subspace error") {
    const double delta = 0.05;  // rad of excess conditional phase
    GateChannelSample s;
    s.u[0] = 1.0;
    s.u[1] = 1.0;
    s.u[2] = -std::polar(1.0, delta);
    const TwoQubitChannel ch =
        TwoQubitChannel::from_samples({s}, 0.0, 0.0, BranchingRatios{});
    // F = (3 + |2 + e^{i delta}|^2) / 12 for m = (1, 1, e^{i delta}).
    const double expected =
        1.0 - (3.0 + std::norm(2.0 + std::polar(1.0, delta))) / 12.0;
    CHECK(ch.mean_gate_error() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("conditioning never increases the fitted error on a noisy channel") {
    const ChannelParams ch = calibrated_single_qubit_channel();
    const RBResult rb = run_single_qubit_rb(ch, {20, 100, 200, 300}, 50, 4000, 5);
    CHECK(rb.fit_cond.error_rate.value <=
          rb.fit.error_rate.value + rb.fit.error_rate.stderr_);
    CHECK(rb.conversion.value > 0.0);
    CHECK(rb.conversion.value < 1.0);
}

TEST_CASE("a channel that never couples |0> to rydberg shows only false positives") {
    GateChannelSample s;
    s.u[0] = 1.0;
    s.u[1] = 1.0;
    s.u[2] = -1.0;
    s.p_decay[1] = 5e-3;
    s.p_decay[2] = 1e-2;  // |11> leaks, |00> does not
    TwoQubitChannel ch = TwoQubitChannel::from_samples({s}, 0.0, 0.0, BranchingRatios{});
    ch.imaging.decay_during_image = 0.0;
    const BiasResult b00 = erasure_bias_experiment(ch, BiasInitial::zz, 18, 40000, 7);
    // Two atoms imaged every other gate: the per-gate floor is the per-atom
    // false-positive rate.
    const double floor = (1.0 - std::pow(1.0 - ch.imaging.false_positive, 2)) / 2.0;
    CHECK(std::abs(b00.per_gate.value - floor) < 3.0 * b00.per_gate.stderr_);
}

TEST_CASE("a symmetric artificial channel has unit erasure bias ratio") {
    GateChannelSample s;
    s.u[0] = 1.0;
    s.u[1] = 1.0;
    s.u[2] = -1.0;
    s.p_decay[0] = 8e-3;
    s.p_decay[1] = 8e-3;
    s.p_decay[2] = 8e-3;
    const TwoQubitChannel ch =
        TwoQubitChannel::from_samples({s}, 0.0, 0.0, BranchingRatios{});
    const BiasResult b11 = erasure_bias_experiment(ch, BiasInitial::oo, 18, 30000, 11);
    const BiasResult b00 = erasure_bias_experiment(ch, BiasInitial::zz, 18, 30000, 13);
    const FitValue ratio = erasure_bias_ratio(b11, b00);
    CHECK(std::abs(ratio.value - 1.0) < 3.0 * ratio.stderr_);
}

TEST_CASE("bias ratio falls back to a lower bound for a zero denominator slope") {
    BiasResult num, den;
    num.per_gate = {6.0e-3, 1.0e-4};
    den.per_gate = {-1.0e-5, 2.0e-4};
    const FitValue bound = erasure_bias_ratio(num, den);
    CHECK(bound.value == doctest::Approx(6.0e-3 / 2.0e-4));
    CHECK(bound.stderr_ == 0.0);
}

TEST_CASE("threshold sweep finds a plateau for well-separated count distributions") {
    const CountModel counts = default_count_model();
    const ChannelParams ch = calibrated_single_qubit_channel();
    const ThresholdSweep sweep = detection_threshold_sweep(counts, ch, 1500, 9);
    REQUIRE(!sweep.points.empty());
    CHECK(sweep.plateau_found);
    CHECK(sweep.plateau_lo < sweep.plateau_hi);
    // Nothing is detected at the high end of the sweep.
    CHECK(sweep.points.back().r_e < 0.05);
    // Reference maximum over the high-purity region, matching the plateau rule.
    double best = 0.0;
    for (const auto& p : sweep.points)
        if (p.p_err_given_det > 0.9) best = std::max(best, p.r_e);
    bool plateau_near_max = false;
    for (const auto& p : sweep.points)
        if (p.threshold >= sweep.plateau_lo && p.threshold <= sweep.plateau_hi &&
            p.r_e >= 0.95 * best && p.p_err_given_det > 0.9)
            plateau_near_max = true;
    CHECK(plateau_near_max);
}
