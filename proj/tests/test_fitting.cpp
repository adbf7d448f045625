#include <cmath>
#include <random>

#include "doctest.h"
#include "rydsim/fitting.hpp"

using namespace ryd;

TEST_CASE("weighted linear fit recovers exact coefficients with sane covariance") {
    const int n = 12;
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n), sigma(n);
    for (int i = 0; i < n; ++i) {
        design(i, 0) = i;
        design(i, 1) = 1.0;
        y(i) = 3.5 * i - 1.25;
        sigma(i) = 0.1 + 0.01 * i;
    }
    const LinearFit fit = weighted_linear_fit(design, y, sigma);
    CHECK(fit.coeffs(0) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(fit.coeffs(1) == doctest::Approx(-1.25).epsilon(1e-10));
    CHECK(fit.chi2 == doctest::Approx(0.0).scale(1.0));
    CHECK(fit.dof == n - 2);
    CHECK(fit.covariance(0, 0) > 0.0);

    CHECK_THROWS(weighted_linear_fit(design, y.head(5), sigma));
}

TEST_CASE("rb decay fit recovers a noiseless curve to high precision") {
    std::vector<double> lengths, success;
    for (double m : {1.0, 20.0, 50.0, 100.0, 180.0, 300.0}) {
        lengths.push_back(m);
        success.push_back(0.5 * std::pow(0.999, m) + 0.5);
    }
    const RbDecayFit fit = fit_rb_decay(lengths, success, {}, 2);
    CHECK(fit.valid);
    CHECK(fit.decay.value == doctest::Approx(0.999).epsilon(1e-6));
    CHECK(fit.amplitude.value == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(fit.offset.value == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(fit.error_rate.value == doctest::Approx(0.0005).epsilon(1e-4));
}

TEST_CASE("rb decay fit with a pinned offset reports zero offset uncertainty") {
    std::vector<double> lengths, success;
    for (double m : {2.0, 4.0, 6.0, 8.0, 10.0}) {
        lengths.push_back(m);
        success.push_back(0.75 * std::pow(0.98, m) + 0.25);
    }
    const RbDecayFit fit = fit_rb_decay(lengths, success, {}, 4, 0.25);
    CHECK(fit.valid);
    CHECK(fit.decay.value == doctest::Approx(0.98).epsilon(1e-6));
    CHECK(fit.offset.value == 0.25);
    CHECK(fit.offset.stderr_ == 0.0);
    CHECK(fit.error_rate.value == doctest::Approx(0.015).epsilon(1e-4));
}

TEST_CASE("a flat curve fits to zero error rate") {
    const std::vector<double> lengths{10.0, 50.0, 150.0, 300.0};
    const std::vector<double> success{1.0, 1.0, 1.0, 1.0};
    const RbDecayFit fit = fit_rb_decay(lengths, success, {}, 2, 0.5);
    CHECK(fit.valid);
    CHECK(fit.error_rate.value < 1e-9);
}

TEST_CASE("rb fitter recovers synthetic binomial channels within 5 percent") {
    std::mt19937_64 rng(4);
    const double p_true = 0.998, A = 0.5, B = 0.5;
    const int shots = 10000;
    std::vector<double> lengths, success, sigma;
    for (double m : {10.0, 40.0, 80.0, 140.0, 220.0, 300.0}) {
        const double p = A * std::pow(p_true, m) + B;
        std::binomial_distribution<int> bin(shots, p);
        const double hat = static_cast<double>(bin(rng)) / shots;
        lengths.push_back(m);
        success.push_back(hat);
        sigma.push_back(std::sqrt(p * (1.0 - p) / shots));
    }
    const RbDecayFit fit = fit_rb_decay(lengths, success, sigma, 2, B);
    const double eps_true = (1.0 - p_true) / 2.0;
    CHECK(fit.error_rate.value == doctest::Approx(eps_true).epsilon(0.05));
}

TEST_CASE("rb fit uncertainty covers the truth at roughly one sigma") {
    std::mt19937_64 rng(11);
    const double p_true = 0.995, A = 0.5, B = 0.5;
    const int shots = 4000;
    const std::vector<double> ms{10.0, 40.0, 80.0, 140.0, 220.0, 300.0};
    int covered = 0;
    const int replicas = 300;
    for (int r = 0; r < replicas; ++r) {
        std::vector<double> lengths, success, sigma;
        for (double m : ms) {
            const double p = A * std::pow(p_true, m) + B;
            std::binomial_distribution<int> bin(shots, p);
            lengths.push_back(m);
            success.push_back(static_cast<double>(bin(rng)) / shots);
            sigma.push_back(std::sqrt(p * (1.0 - p) / shots));
        }
        const RbDecayFit fit = fit_rb_decay(lengths, success, sigma, 2, B);
        if (std::abs(fit.decay.value - p_true) <= fit.decay.stderr_) ++covered;
    }
    const double coverage = static_cast<double>(covered) / replicas;
    CHECK(coverage > 0.55);
    CHECK(coverage < 0.82);
}

TEST_CASE("parity fit recovers amplitude, phase, and offset") {
    std::vector<double> theta, signal, sigma;
    const double A = 0.215, th0 = 0.6, B = 0.22;
    for (int i = 0; i < 16; ++i) {
        const double th = i * M_PI / 8.0;
        theta.push_back(th);
        signal.push_back(A * std::cos(2.0 * th + th0) + B);
        sigma.push_back(0.01);
    }
    const ParityFit fit = fit_parity(theta, signal, sigma);
    CHECK(fit.amplitude.value == doctest::Approx(A).epsilon(1e-10));
    CHECK(fit.phase.value == doctest::Approx(th0).epsilon(1e-9));
    CHECK(fit.offset.value == doctest::Approx(B).epsilon(1e-10));
    CHECK(fit.coherence.value == doctest::Approx(4.0 * A).epsilon(1e-10));

    // Points spanning less than a half period cannot pin the frequency-2 term.
    std::vector<double> short_theta{0.0, 0.1, 0.2, 0.3, 0.4};
    std::vector<double> short_signal{0.1, 0.2, 0.3, 0.2, 0.1};
    CHECK_THROWS_AS(fit_parity(short_theta, short_signal, {}), std::invalid_argument);
}

TEST_CASE("line and lifetime fits recover their coefficients") {
    std::vector<double> x, y, s;
    for (int i = 0; i < 8; ++i) {
        x.push_back(i);
        y.push_back(0.75 * i + 0.1);
        s.push_back(0.05);
    }
    const LineFit line = fit_line(x, y, s);
    CHECK(line.slope.value == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(line.intercept.value == doctest::Approx(0.1).epsilon(1e-8));

    std::vector<double> power, rate, sr;
    for (double p : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        power.push_back(p);
        rate.push_back(0.34 + 0.05 * p + 0.01 * p * p);
        sr.push_back(0.01);
    }
    const LifetimeFit life = fit_lifetime(power, rate, sr);
    CHECK(life.gamma0.value == doctest::Approx(0.34).epsilon(1e-8));
    CHECK(life.alpha.value == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(life.beta.value == doctest::Approx(0.01).epsilon(1e-6));
    CHECK_FALSE(life.unphysical);
}
