#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "rydsim/blockade.hpp"
#include "rydsim/grape.hpp"

using namespace ryd;

namespace {

const double kOmega = 2.0 * M_PI * 1.6e6;

GateParams reference_params() {
    GateParams p;
    p.omega = kOmega;
    p.delta_r = 5.8 * kOmega;
    p.duration = 9.5493e-7;
    p.blockade = std::numeric_limits<double>::infinity();
    return p;
}

}  // namespace

TEST_CASE("cz fidelity fixed points: identity and the perfect gate") {
    CHECK(cz_fidelity(CZOverlaps{1.0, 1.0, 1.0}).fidelity == doctest::Approx(0.6));

    const double th = 0.83;
    const std::complex<double> z = std::polar(1.0, th);
    const CZFidelity perfect = cz_fidelity(CZOverlaps{1.0, z, -z * z});
    CHECK(perfect.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::remainder(perfect.theta1 - th, 2.0 * M_PI) ==
          doctest::Approx(0.0).epsilon(1e-6));

    // A global phase drops out entirely.
    const std::complex<double> g = std::polar(1.0, 1.234);
    CHECK(cz_fidelity(CZOverlaps{g, g * z, -g * z * z}).fidelity ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-unitary overlaps are rejected") {
    CHECK_THROWS_AS(cz_fidelity(CZOverlaps{1.5, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("analytic gradient matches finite differences on 100 random pulses") {
    const BlockadeModel model = build_blockade_model(reference_params());
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    const int n_pieces = 12;
    const double h = 1e-5;

    for (int trial = 0; trial < 100; ++trial) {
        Pulse pulse = make_flat_pulse(n_pieces, kOmega, 9.5493e-7, 9.5493e-7 / 20.0);
        for (auto& ph : pulse.phase) ph = uni(rng);

        const GradientResult g = fidelity_gradient(model, pulse);
        Eigen::VectorXd fd(n_pieces);
        for (int n = 0; n < n_pieces; ++n) {
            Pulse up = pulse, dn = pulse;
            up.phase[static_cast<std::size_t>(n)] += h;
            dn.phase[static_cast<std::size_t>(n)] -= h;
            fd(n) = (cz_fidelity(block_overlaps(model, up)).fidelity -
                     cz_fidelity(block_overlaps(model, dn)).fidelity) /
                    (2.0 * h);
        }
        REQUIRE(g.gradient.size() == n_pieces);
        CHECK((fd - g.gradient).norm() / fd.norm() < 1e-6);
    }
}

TEST_CASE("gradient fidelity agrees with the direct evaluation") {
    const BlockadeModel model = build_blockade_model(reference_params());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    Pulse pulse = make_flat_pulse(40, kOmega, 9.5493e-7, 9.5493e-7 / 20.0);
    for (auto& ph : pulse.phase) ph = uni(rng);

    const GradientResult g = fidelity_gradient(model, pulse);
    const CZFidelity f = cz_fidelity(block_overlaps(model, pulse));
    CHECK(g.fidelity == doctest::Approx(f.fidelity).epsilon(1e-12));
    CHECK(g.theta1 == doctest::Approx(f.theta1).epsilon(1e-9));
}

TEST_CASE("short optimization run makes monotone progress and is deterministic") {
    OptimizerConfig oc;
    oc.restarts = 2;
    oc.max_iterations = 150;
    oc.target_infidelity = 1e-3;
    const OptimizationResult a = optimize(reference_params(), 50, 9.5493e-7 / 20.0, 3, oc);
    const OptimizationResult b = optimize(reference_params(), 50, 9.5493e-7 / 20.0, 3, oc);
    CHECK(a.infidelity < 0.4);  // flat-phase start scores 1 - 0.6
    CHECK(a.infidelity == b.infidelity);
    for (std::size_t i = 0; i < a.pulse.phase.size(); ++i)
        CHECK(a.pulse.phase[i] == b.pulse.phase[i]);
}

TEST_CASE("chebyshev refit recovers a pulse born from a chebyshev detuning") {
    ChebyshevDetuning det;
    det.coeffs = {3.0e6, -1.2e6, 8.0e5, -4.0e5, 2.0e5, 1.0e5};
    const double T = 9.5493e-7;
    const Pulse pulse = detuning_to_phase(det, 100, kOmega, T, T / 20.0);

    // Phases are stored piecewise, so the implied detuning carries an O(1/N^2)
    // discretization bias; coefficients come back to ~1e-4 relative.
    const ChebyshevRefit refit = chebyshev_refit(pulse, 8);
    REQUIRE(refit.detuning.coeffs.size() == 9);
    for (std::size_t i = 0; i < det.coeffs.size(); ++i)
        CHECK(refit.detuning.coeffs[i] ==
              doctest::Approx(det.coeffs[i]).epsilon(1e-3).scale(1e6));
    for (std::size_t i = det.coeffs.size(); i < refit.detuning.coeffs.size(); ++i)
        CHECK(std::abs(refit.detuning.coeffs[i]) < 1e3);
}

TEST_CASE("finetune_scan brackets the best coefficient value") {
    const BlockadeModel model = build_blockade_model(reference_params());
    ChebyshevDetuning det;
    det.coeffs = {2.0e6, -1.0e6, 5.0e5};
    auto evaluate = [&](const Pulse& p) {
        return cz_fidelity(block_overlaps(model, p)).fidelity;
    };
    const ScanResult scan = finetune_scan(det, 0, 4.0e5, 21, 60, kOmega, 9.5493e-7,
                                          9.5493e-7 / 20.0, evaluate);
    REQUIRE(scan.points.size() == 21);
    for (const auto& pt : scan.points) CHECK(scan.best_fidelity >= pt.fidelity);
    CHECK(scan.best_value >= 2.0e6 - 4.0e5);
    CHECK(scan.best_value <= 2.0e6 + 4.0e5);
}
