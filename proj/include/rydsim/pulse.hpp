// Drive pulse representation: piecewise-constant phase, Gaussian-edged
// amplitude envelope, and the Chebyshev detuning parameterization.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ryd {

struct GateParams {
    double omega = 0.0;       // Rabi angular frequency (rad/s)
    double delta_r = 0.0;     // Rydberg Zeeman splitting (rad/s)
    double delta_m = 0.0;     // metastable Zeeman splitting (rad/s)
    double duration = 0.0;    // gate duration T (s)
    double blockade = 0.0;    // van der Waals V (rad/s); +inf = perfect blockade

    void validate() const;    // throws std::invalid_argument
};

struct Pulse {
    int n_pieces = 0;
    std::vector<double> phase;     // phi_n (rad), one per piece
    double omega = 0.0;            // flat-top Rabi frequency (rad/s)
    double duration = 0.0;         // T (s)
    double edge_sigma = 0.0;       // Gaussian edge width sigma_e (s)

    double dt() const { return duration / n_pieces; }
    // Piece midpoints t_n = (n + 1/2) T / N.
    double piece_time(int n) const { return (n + 0.5) * dt(); }
    // Envelope: Gaussian rise reaching omega at 3 sigma_e, flat top, mirrored fall.
    double envelope(double t) const;
    double envelope_at_piece(int n) const { return envelope(piece_time(n)); }

    void validate() const;
};

// Flat-phase pulse helper.
Pulse make_flat_pulse(int n_pieces, double omega, double duration, double edge_sigma);

// Detuning Delta(t) = phi_dot(t) as a truncated Chebyshev series on [0, T]
// mapped to [-1, 1].
struct ChebyshevDetuning {
    std::vector<double> coeffs;    // c_0 .. c_nmax (rad/s)

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    double value(double t, double duration) const;
    // Exact antiderivative: phase(t) = integral_0^t Delta(t') dt'.
    double phase_integral(double t, double duration) const;
};

// Builds the piecewise-constant pulse whose phase is the exact polynomial
// antiderivative of the detuning, sampled at piece midpoints.
Pulse detuning_to_phase(const ChebyshevDetuning& det, int n_pieces, double omega,
                        double duration, double edge_sigma);

// Pulse table I/O: columns (t_seconds, omega_rad_per_s, phi_rad, delta_rad_per_s).
void write_pulse_table(const std::string& path, const Pulse& pulse);
Pulse read_pulse_table(const std::string& path);

// Removes 2*pi jumps from a phase profile (in place copy).
std::vector<double> unwrap_phases(const std::vector<double>& phase);

}  // namespace ryd
