#include "rydsim/pulse.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ryd {

void GateParams::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
    if (!std::isfinite(delta_r / omega))
        throw std::invalid_argument("delta_r / omega must be finite");
}

void Pulse::validate() const {
    if (n_pieces < 1) throw std::invalid_argument("pulse needs at least one piece");
    if (phase.size() != static_cast<std::size_t>(n_pieces))
        throw std::invalid_argument("phase array length mismatch");
    if (!(duration > 0.0)) throw std::invalid_argument("pulse duration must be > 0");
    if (omega < 0.0) throw std::invalid_argument("pulse amplitude must be >= 0");
    for (double p : phase)
        if (!std::isfinite(p)) throw std::invalid_argument("non-finite phase value");
}

double Pulse::envelope(double t) const {
    if (t < 0.0 || t > duration) return 0.0;
    if (edge_sigma <= 0.0) return omega;
    const double ramp = 3.0 * edge_sigma;
    if (t < ramp) {
        const double u = (t - ramp) / edge_sigma;
        return omega * std::exp(-0.5 * u * u);
    }
    if (t > duration - ramp) {
        const double u = (t - (duration - ramp)) / edge_sigma;
        return omega * std::exp(-0.5 * u * u);
    }
    return omega;
}

Pulse make_flat_pulse(int n_pieces, double omega, double duration, double edge_sigma) {
    Pulse p;
    p.n_pieces = n_pieces;
    p.phase.assign(static_cast<std::size_t>(n_pieces), 0.0);
    p.omega = omega;
    p.duration = duration;
    p.edge_sigma = edge_sigma;
    p.validate();
    return p;
}

namespace {

// Chebyshev series evaluation by Clenshaw recurrence.
double clenshaw(const std::vector<double>& c, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) {
        double b0 = 2.0 * x * b1 - b2 + c[i];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

// Antiderivative coefficients: integral of sum c_n T_n(x) dx = sum b_n T_n(x) + C,
// with b_1 = c_0 - c_2/2, b_n = (c_{n-1} - c_{n+1}) / (2n) for n >= 2.
std::vector<double> chebyshev_antiderivative(const std::vector<double>& c) {
    const std::size_t n = c.size();
    std::vector<double> b(n + 1, 0.0);
    auto cc = [&](std::size_t i) { return i < n ? c[i] : 0.0; };
    if (n >= 1) b[1] = cc(0) - 0.5 * cc(2);
    for (std::size_t k = 2; k <= n; ++k) b[k] = (cc(k - 1) - cc(k + 1)) / (2.0 * k);
    return b;
}

}  // namespace

double ChebyshevDetuning::value(double t, double duration) const {
    if (coeffs.empty()) return 0.0;
    const double x = 2.0 * t / duration - 1.0;
    return clenshaw(coeffs, x);
}

double ChebyshevDetuning::phase_integral(double t, double duration) const {
    if (coeffs.empty()) return 0.0;
    const std::vector<double> b = chebyshev_antiderivative(coeffs);
    const double x = 2.0 * t / duration - 1.0;
    // dt = (T/2) dx
    return 0.5 * duration * (clenshaw(b, x) - clenshaw(b, -1.0));
}

Pulse detuning_to_phase(const ChebyshevDetuning& det, int n_pieces, double omega,
                        double duration, double edge_sigma) {
    Pulse p = make_flat_pulse(n_pieces, omega, duration, edge_sigma);
    for (int n = 0; n < n_pieces; ++n)
        p.phase[static_cast<std::size_t>(n)] = det.phase_integral(p.piece_time(n), duration);
    return p;
}

std::vector<double> unwrap_phases(const std::vector<double>& phase) {
    std::vector<double> out = phase;
    const double two_pi = 2.0 * M_PI;
    for (std::size_t i = 1; i < out.size(); ++i) {
        double d = out[i] - out[i - 1];
        d -= two_pi * std::round(d / two_pi);
        out[i] = out[i - 1] + d;
    }
    return out;
}

void write_pulse_table(const std::string& path, const Pulse& pulse) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open pulse file for writing: " + path);
    f.precision(17);
    f << "t_seconds\tomega_rad_per_s\tphi_rad\tdelta_rad_per_s\n";
    const double dt = pulse.dt();
    for (int n = 0; n < pulse.n_pieces; ++n) {
        const double t = pulse.piece_time(n);
        const double phi = pulse.phase[static_cast<std::size_t>(n)];
        // Report the implied detuning as the phase slope across neighbors.
        double delta;
        if (n == 0)
            delta = (pulse.phase[1] - pulse.phase[0]) / dt;
        else if (n == pulse.n_pieces - 1)
            delta = (phi - pulse.phase[static_cast<std::size_t>(n - 1)]) / dt;
        else
            delta = (pulse.phase[static_cast<std::size_t>(n + 1)] -
                     pulse.phase[static_cast<std::size_t>(n - 1)]) / (2.0 * dt);
        f << t << '\t' << pulse.envelope_at_piece(n) << '\t' << phi << '\t' << delta << '\n';
    }
    // Trailer row carries the envelope parameters for exact round-trips.
    f << "# duration=" << pulse.duration << " omega=" << pulse.omega
      << " edge_sigma=" << pulse.edge_sigma << " n_pieces=" << pulse.n_pieces << '\n';
}

Pulse read_pulse_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open pulse file: " + path);
    Pulse p;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const double val = std::stod(tok.substr(eq + 1));
                if (key == "duration") p.duration = val;
                else if (key == "omega") p.omega = val;
                else if (key == "edge_sigma") p.edge_sigma = val;
                else if (key == "n_pieces") p.n_pieces = static_cast<int>(val);
            }
            continue;
        }
        if (line.rfind("t_seconds", 0) == 0) continue;
        std::istringstream ss(line);
        double t, om, phi, delta;
        if (!(ss >> t >> om >> phi >> delta))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
        p.phase.push_back(phi);
    }
    if (p.n_pieces == 0) p.n_pieces = static_cast<int>(p.phase.size());
    p.validate();
    return p;
}

}  // namespace ryd
