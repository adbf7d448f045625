#include "rydsim/grape.hpp"

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

#include "rydsim/rng.hpp"

namespace ryd {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

namespace {

constexpr double kWeights[3] = {1.0, 2.0, 1.0};

complex<double> unit_phase(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

complex<double> target_sum(const CZOverlaps& u, double theta1) {
    const complex<double> z = unit_phase(-theta1);
    return u.u00 + 2.0 * u.u01 * z - u.u11 * z * z;
}

void check_overlaps(const CZOverlaps& u) {
    for (const auto& v : {u.u00, u.u01, u.u11})
        if (std::abs(v) > 1.0 + 1e-6)
            throw std::invalid_argument("overlap magnitude exceeds 1: non-unitary input");
}

}  // namespace

double cz_fidelity_at(const CZOverlaps& u, double theta1) {
    check_overlaps(u);
    const double pops = kWeights[0] * std::norm(u.u00) + kWeights[1] * std::norm(u.u01) +
                        kWeights[2] * std::norm(u.u11);
    return (pops + std::norm(target_sum(u, theta1))) / 20.0;
}

CZFidelity cz_fidelity(const CZOverlaps& u) {
    check_overlaps(u);
    // |s(theta)|^2 is a degree-2 trigonometric polynomial; locate the maximum
    // with a dense grid, then polish with Newton on the analytic derivative.
    auto s = [&](double th) { return target_sum(u, th); };
    double best_th = 0.0, best = -1.0;
    const int grid = 512;
    for (int i = 0; i < grid; ++i) {
        const double th = 2.0 * M_PI * i / grid;
        const double v = std::norm(s(th));
        if (v > best) { best = v; best_th = th; }
    }
    double th = best_th;
    for (int it = 0; it < 12; ++it) {
        const complex<double> z = unit_phase(-th);
        const complex<double> sv = u.u00 + 2.0 * u.u01 * z - u.u11 * z * z;
        const complex<double> s1 = complex<double>(0, -1) * (2.0 * u.u01 * z - 2.0 * u.u11 * z * z);
        const complex<double> s2 = -(2.0 * u.u01 * z - 4.0 * u.u11 * z * z);
        const double g1 = 2.0 * (std::conj(sv) * s1).real();
        const double g2 = 2.0 * ((std::conj(sv) * s2).real() + std::norm(s1));
        if (g2 >= 0.0 || std::abs(g1) < 1e-15) break;
        th -= g1 / g2;
    }
    if (std::norm(s(th)) < best) th = best_th;
    CZFidelity out;
    out.theta1 = std::remainder(th, 2.0 * M_PI);
    out.fidelity = cz_fidelity_at(u, out.theta1);
    return out;
}

CZOverlaps block_overlaps(const BlockadeModel& model, const Pulse& pulse) {
    complex<double> u[3];
    for (int k = 0; k < 3; ++k) {
        const Block& b = model.blockaded ? model.block(k) : model.full;
        const MatrixXcd prop = propagate(b, pulse);
        int init = model.block(k).initial;
        if (!model.blockaded) init = model.block(k).indices[0];
        u[k] = prop(init, init);
    }
    return {u[0], u[1], u[2]};
}

GradientResult fidelity_gradient(const BlockadeModel& model, const Pulse& pulse) {
    pulse.validate();
    const int n_pieces = pulse.n_pieces;
    const double tau = pulse.dt();

    GradientResult out;
    out.gradient = VectorXd::Zero(n_pieces);

    std::vector<std::vector<complex<double>>> grads(3);
    complex<double> overlaps[3];

    for (int k = 0; k < 3; ++k) {
        const Block& b = model.blockaded ? model.block(k) : model.full;
        const int init = model.blockaded ? model.block(k).initial
                                         : model.block(k).indices[0];
        const int dim = b.dim();

        std::vector<PieceEigen> pieces;
        pieces.reserve(static_cast<std::size_t>(n_pieces));
        std::vector<VectorXcd> fwd;  // fwd[n] = U_{n-1}...U_0 |init>
        fwd.reserve(static_cast<std::size_t>(n_pieces) + 1);

        VectorXcd psi = VectorXcd::Zero(dim);
        psi(init) = 1.0;
        fwd.push_back(psi);
        std::vector<double> omegas(static_cast<std::size_t>(n_pieces));
        for (int n = 0; n < n_pieces; ++n) {
            const std::size_t i = static_cast<std::size_t>(n);
            omegas[i] = pulse.envelope_at_piece(n);
            pieces.push_back(piece_eigen(b.hamiltonian(pulse.phase[i], omegas[i]), tau));
            psi = pieces.back().unitary * psi;
            fwd.push_back(psi);
        }
        overlaps[k] = psi(init);

        // Backward pass: chi_n = U_n^dag ... U_{N-1}^dag |init>, so
        // du/dphi_n = chi_{n+1}^dag (dU_n) fwd[n].
        VectorXcd chi = VectorXcd::Zero(dim);
        chi(init) = 1.0;
        grads[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(n_pieces), 0.0);
        for (int n = n_pieces - 1; n >= 0; --n) {
            const std::size_t i = static_cast<std::size_t>(n);
            const complex<double> e = unit_phase(-pulse.phase[i]);
            // dH/dphi = Omega(-i e^{-i phi} C + i e^{i phi} C^dag)
            const MatrixXcd dh = omegas[i] *
                (complex<double>(0, -1) * e * b.coupling +
                 complex<double>(0, 1) * std::conj(e) * b.coupling.adjoint());
            const MatrixXcd dexp = pieces[i].exp_derivative(dh, tau);
            grads[static_cast<std::size_t>(k)][i] = chi.dot(dexp * fwd[i]);
            chi = pieces[i].unitary.adjoint() * chi;
        }
    }

    out.overlaps = {overlaps[0], overlaps[1], overlaps[2]};
    const CZFidelity f = cz_fidelity(out.overlaps);
    out.fidelity = f.fidelity;
    out.theta1 = f.theta1;

    // Chain rule through F; theta1 is an interior maximizer, so its implicit
    // dependence contributes nothing at first order (envelope theorem).
    const complex<double> z = unit_phase(-f.theta1);
    const complex<double> s = target_sum(out.overlaps, f.theta1);
    const complex<double> phase_k[3] = {1.0, 2.0 * z, -z * z};
    const complex<double> u_k[3] = {overlaps[0], overlaps[1], overlaps[2]};
    for (int n = 0; n < n_pieces; ++n) {
        double g = 0.0;
        for (int k = 0; k < 3; ++k) {
            const complex<double> duk = grads[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
            g += kWeights[k] * (std::conj(u_k[k]) * duk).real();
            g += (std::conj(s) * phase_k[k] * duk).real();
        }
        out.gradient(n) = g / 10.0;
    }
    return out;
}

namespace {

// The piece Hamiltonian obeys H(phi) = e^{-i phi G} H(0) e^{i phi G} with G
// the Rydberg-count diagonal (every drive coupling raises the count by one,
// and the interaction term preserves it). Piece exponentials at phi = 0 are
// therefore phase-independent and can be precomputed once per pulse shape;
// phases then enter only as diagonal masks, and
// dU/dphi = -i [G, U] needs no Frechet derivative.
struct BlockBasis {
    std::vector<MatrixXcd> expm;  // exp(-i tau H(0, Omega_n)), one per piece
    VectorXd g;                   // Rydberg counts
    int init = 0;
};

std::vector<BlockBasis> build_piece_basis(const BlockadeModel& model,
                                          const Pulse& pulse) {
    const double tau = pulse.dt();
    std::vector<BlockBasis> basis(3);
    for (int k = 0; k < 3; ++k) {
        const Block& b = model.blockaded ? model.block(k) : model.full;
        BlockBasis& bb = basis[static_cast<std::size_t>(k)];
        bb.g = b.ryd_count;
        bb.init = model.blockaded ? model.block(k).initial : model.block(k).indices[0];
        bb.expm.reserve(static_cast<std::size_t>(pulse.n_pieces));
        for (int n = 0; n < pulse.n_pieces; ++n)
            bb.expm.push_back(
                hermitian_expm(b.hamiltonian(0.0, pulse.envelope_at_piece(n)), tau));
    }
    return basis;
}

void apply_mask(VectorXcd& psi, const VectorXd& g, double phi) {
    const complex<double> e = unit_phase(phi);
    for (int j = 0; j < psi.size(); ++j) {
        const int c = static_cast<int>(g(j) + 0.5);
        if (c == 1) psi(j) *= e;
        else if (c == 2) psi(j) *= e * e;
    }
}

CZOverlaps basis_overlaps(const std::vector<BlockBasis>& basis, const VectorXd& x) {
    complex<double> u[3];
    for (int k = 0; k < 3; ++k) {
        const BlockBasis& bb = basis[static_cast<std::size_t>(k)];
        VectorXcd psi = VectorXcd::Zero(bb.g.size());
        psi(bb.init) = 1.0;
        // U_n(phi) = e^{i phi G} E_n e^{-i phi G} with E_n = exp(-i tau H(0)).
        for (std::size_t n = 0; n < bb.expm.size(); ++n) {
            apply_mask(psi, bb.g, -x(static_cast<int>(n)));
            psi = bb.expm[n] * psi;
            apply_mask(psi, bb.g, x(static_cast<int>(n)));
        }
        u[k] = psi(bb.init);
    }
    return {u[0], u[1], u[2]};
}

GradientResult basis_gradient(const std::vector<BlockBasis>& basis, const VectorXd& x) {
    const int n_pieces = static_cast<int>(basis[0].expm.size());
    GradientResult out;
    out.gradient = VectorXd::Zero(n_pieces);

    std::vector<std::vector<complex<double>>> grads(3);
    complex<double> overlaps[3];
    for (int k = 0; k < 3; ++k) {
        const BlockBasis& bb = basis[static_cast<std::size_t>(k)];
        const int dim = static_cast<int>(bb.g.size());

        std::vector<VectorXcd> fwd;
        fwd.reserve(static_cast<std::size_t>(n_pieces) + 1);
        VectorXcd psi = VectorXcd::Zero(dim);
        psi(bb.init) = 1.0;
        fwd.push_back(psi);
        for (int n = 0; n < n_pieces; ++n) {
            apply_mask(psi, bb.g, -x(n));
            psi = bb.expm[static_cast<std::size_t>(n)] * psi;
            apply_mask(psi, bb.g, x(n));
            fwd.push_back(psi);
        }
        overlaps[k] = psi(bb.init);

        // dU_n = i (G U_n - U_n G); du/dphi_n = chi_{n+1}^dag dU_n fwd[n].
        VectorXcd chi = VectorXcd::Zero(dim);
        chi(bb.init) = 1.0;
        grads[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(n_pieces), 0.0);
        for (int n = n_pieces - 1; n >= 0; --n) {
            VectorXcd ug = fwd[static_cast<std::size_t>(n)];
            ug = bb.g.array() * ug.array();  // G psi
            apply_mask(ug, bb.g, -x(n));
            ug = bb.expm[static_cast<std::size_t>(n)] * ug;
            apply_mask(ug, bb.g, x(n));  // U_n G psi
            const VectorXcd gu =
                bb.g.array() * fwd[static_cast<std::size_t>(n) + 1].array();  // G U_n psi
            grads[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] =
                complex<double>(0, 1) * (chi.dot(gu) - chi.dot(ug));
            // chi_n = U_n^dag chi_{n+1} = e^{i phi G} E_n^dag e^{-i phi G} chi
            apply_mask(chi, bb.g, -x(n));
            chi = bb.expm[static_cast<std::size_t>(n)].adjoint() * chi;
            apply_mask(chi, bb.g, x(n));
        }
    }

    out.overlaps = {overlaps[0], overlaps[1], overlaps[2]};
    const CZFidelity f = cz_fidelity(out.overlaps);
    out.fidelity = f.fidelity;
    out.theta1 = f.theta1;
    const complex<double> z = unit_phase(-f.theta1);
    const complex<double> s = target_sum(out.overlaps, f.theta1);
    const complex<double> phase_k[3] = {1.0, 2.0 * z, -z * z};
    for (int n = 0; n < n_pieces; ++n) {
        double g = 0.0;
        for (int k = 0; k < 3; ++k) {
            const complex<double> duk =
                grads[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
            g += kWeights[k] * (std::conj(overlaps[k]) * duk).real();
            g += (std::conj(s) * phase_k[k] * duk).real();
        }
        out.gradient(n) = g / 10.0;
    }
    return out;
}

// L-BFGS minimization of 1 - F with Armijo backtracking.
struct LbfgsPair {
    VectorXd s;
    VectorXd y;
    double rho = 0.0;
};

struct LbfgsOutcome {
    VectorXd x;
    double fx = 1.0;
    int iterations = 0;
    bool converged = false;
};

template <class FG, class F>
LbfgsOutcome lbfgs_minimize(VectorXd x, FG&& eval, F&& eval_f,
                            const OptimizerConfig& cfg) {
    const int n = static_cast<int>(x.size());
    VectorXd g(n);
    double fx = eval(x, g);

    std::deque<LbfgsPair> memory;
    LbfgsOutcome result;

    int iter = 0;
    for (; iter < cfg.max_iterations; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() < cfg.gradient_tol) {
            result.converged = true;
            break;
        }
        if (cfg.stop_at_target && fx < cfg.target_infidelity &&
            g.lpNorm<Eigen::Infinity>() < 1e-7) {
            result.converged = true;
            break;
        }

        // Two-loop recursion.
        VectorXd q = g;
        std::vector<double> alpha(memory.size());
        for (std::size_t i = memory.size(); i-- > 0;) {
            alpha[i] = memory[i].rho * memory[i].s.dot(q);
            q -= alpha[i] * memory[i].y;
        }
        if (!memory.empty()) {
            const auto& last = memory.back();
            q *= last.s.dot(last.y) / last.y.squaredNorm();
        }
        for (std::size_t i = 0; i < memory.size(); ++i) {
            const double beta = memory[i].rho * memory[i].y.dot(q);
            q += (alpha[i] - beta) * memory[i].s;
        }
        VectorXd dir = -q;
        double slope = g.dot(dir);
        if (slope >= 0.0) {  // fall back to steepest descent
            dir = -g;
            slope = g.dot(dir);
        }

        double step = memory.empty() ? 1.0 / std::max(1e-12, g.norm()) : 1.0;
        double fn = fx;
        VectorXd xn, gn(n);
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            xn = x + step * dir;
            fn = eval_f(xn);
            if (fn <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        fn = eval(xn, gn);

        LbfgsPair pair;
        pair.s = xn - x;
        pair.y = gn - g;
        const double sy = pair.s.dot(pair.y);
        if (sy > 1e-14) {
            pair.rho = 1.0 / sy;
            memory.push_back(std::move(pair));
            if (static_cast<int>(memory.size()) > cfg.lbfgs_memory) memory.pop_front();
        }
        x = xn;
        g = gn;
        fx = fn;
    }

    result.x = std::move(x);
    result.fx = fx;
    result.iterations = iter;
    return result;
}

OptimizationResult run_single(const std::vector<BlockBasis>& basis, Pulse pulse,
                              const OptimizerConfig& cfg) {
    const int n = pulse.n_pieces;
    auto eval = [&](const VectorXd& x, VectorXd& grad) {
        GradientResult r = basis_gradient(basis, x);
        grad = -r.gradient;
        return 1.0 - r.fidelity;
    };
    auto eval_f = [&](const VectorXd& x) {
        return 1.0 - cz_fidelity(basis_overlaps(basis, x)).fidelity;
    };
    VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = pulse.phase[static_cast<std::size_t>(i)];
    const LbfgsOutcome o = lbfgs_minimize(x0, eval, eval_f, cfg);

    for (int i = 0; i < n; ++i) pulse.phase[static_cast<std::size_t>(i)] = o.x(i);
    const GradientResult final = basis_gradient(basis, o.x);
    OptimizationResult result;
    result.pulse = std::move(pulse);
    result.theta1 = final.theta1;
    result.infidelity = 1.0 - final.fidelity;
    result.iterations = o.iterations;
    result.converged = o.converged;
    return result;
}

// Dimensionless design matrix mapping z = c * T to the piece phases, so the
// coefficient-space gradients share the scale of the phase stage.
Eigen::MatrixXd polish_design(const Pulse& shape, int n_max) {
    const int np = shape.n_pieces;
    Eigen::MatrixXd m(np, n_max + 1);
    for (int j = 0; j <= n_max; ++j) {
        ChebyshevDetuning unit;
        unit.coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
        unit.coeffs[static_cast<std::size_t>(j)] = 1.0 / shape.duration;
        for (int n = 0; n < np; ++n)
            m(n, j) = unit.phase_integral(shape.piece_time(n), shape.duration);
    }
    return m;
}

LbfgsOutcome polish_once(const std::vector<BlockBasis>& basis,
                         const Eigen::MatrixXd& m, VectorXd z,
                         const OptimizerConfig& cfg) {
    auto eval = [&](const VectorXd& cc, VectorXd& grad) {
        GradientResult r = basis_gradient(basis, m * cc);
        grad = -(m.transpose() * r.gradient);
        return 1.0 - r.fidelity;
    };
    auto eval_f = [&](const VectorXd& cc) {
        return 1.0 - cz_fidelity(basis_overlaps(basis, m * cc)).fidelity;
    };
    return lbfgs_minimize(std::move(z), eval, eval_f, cfg);
}

VectorXd refit_seed(const Pulse& pulse, int n_max) {
    const ChebyshevRefit refit = chebyshev_refit(pulse, n_max);
    VectorXd z(n_max + 1);
    for (int j = 0; j <= n_max; ++j)
        z(j) = refit.detuning.coeffs[static_cast<std::size_t>(j)] * pulse.duration;
    return z;
}

// Re-optimizes the converged solution inside the Chebyshev-detuning subspace
// (phase linear in the coefficients), so the returned pulse is exactly
// representable at the requested polynomial order. Seeds tried in order: the
// direct least-squares refit, then a continuation pass through a higher-order
// subspace truncated back to n_max.
OptimizationResult polish_chebyshev(const std::vector<BlockBasis>& basis,
                                    const OptimizationResult& seed, int n_max,
                                    const OptimizerConfig& cfg) {
    const Pulse& shape = seed.pulse;
    const Eigen::MatrixXd m = polish_design(shape, n_max);

    LbfgsOutcome best_o;
    int total_iters = 0;
    auto consider = [&](const LbfgsOutcome& o) {
        total_iters += o.iterations;
        if (best_o.x.size() == 0 || o.fx < best_o.fx) best_o = o;
        return o.fx <= cfg.target_infidelity;
    };

    if (!consider(polish_once(basis, m, refit_seed(shape, n_max), cfg))) {
        const int high = std::max(2 * n_max + 4, 30);
        if (shape.n_pieces - 1 >= high + 1) {
            const Eigen::MatrixXd mh = polish_design(shape, high);
            const LbfgsOutcome oh = polish_once(basis, mh, refit_seed(shape, high), cfg);
            total_iters += oh.iterations;
            consider(polish_once(basis, m, oh.x.head(n_max + 1), cfg));
        }
    }

    OptimizationResult result = seed;
    const VectorXd phi = m * best_o.x;
    for (int i = 0; i < shape.n_pieces; ++i)
        result.pulse.phase[static_cast<std::size_t>(i)] = phi(i);
    const GradientResult final = basis_gradient(basis, phi);
    result.theta1 = final.theta1;
    result.infidelity = 1.0 - final.fidelity;
    result.iterations += total_iters;
    result.converged = best_o.converged;
    return result;
}

}  // namespace

OptimizationResult optimize(const GateParams& params, int n_pieces, double edge_sigma,
                            std::uint64_t seed, const OptimizerConfig& cfg) {
    if (n_pieces < 10) throw std::invalid_argument("optimize requires N >= 10");
    const BlockadeModel model = build_blockade_model(params);
    const Pulse shape = make_flat_pulse(n_pieces, params.omega, params.duration, edge_sigma);
    const std::vector<BlockBasis> basis = build_piece_basis(model, shape);
    OptimizationResult best;
    for (int r = 0; r < cfg.restarts; ++r) {
        Pulse init = shape;
        std::mt19937_64 rng = make_engine(seed, static_cast<std::uint64_t>(r));
        // Smooth random start: a low-order Chebyshev phase profile. Rough
        // (piecewise-independent) starts leave wiggles in flat directions of
        // the landscape that a later low-order polynomial refit cannot track.
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        const int order = 8;
        std::vector<double> a(static_cast<std::size_t>(order) + 1);
        for (auto& v : a) v = M_PI * uni(rng);
        for (int i = 0; i < n_pieces; ++i) {
            const double x = 2.0 * init.piece_time(i) / init.duration - 1.0;
            double tm2 = 1.0, tm1 = x, phi = a[0] + a[1] * x;
            for (int j = 2; j <= order; ++j) {
                const double tj = 2.0 * x * tm1 - tm2;
                phi += a[static_cast<std::size_t>(j)] * tj;
                tm2 = tm1;
                tm1 = tj;
            }
            init.phase[static_cast<std::size_t>(i)] = phi;
        }
        OptimizationResult res = run_single(basis, init, cfg);
        res.restart = r;
        if (res.infidelity < best.infidelity) best = res;
        if (cfg.stop_at_target && best.infidelity < cfg.target_infidelity) break;
    }
    if (cfg.polish_order > 0 && best.restart >= 0 && best.infidelity < 0.5) {
        const OptimizationResult polished =
            polish_chebyshev(basis, best, cfg.polish_order, cfg);
        // Keep the polished pulse only if it is as good as the free-phase one.
        if (polished.infidelity <= std::max(best.infidelity, cfg.target_infidelity))
            best = polished;
    }
    return best;
}

ChebyshevRefit chebyshev_refit(const Pulse& pulse, int n_max, double residual_threshold) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    pulse.validate();
    const int nb = pulse.n_pieces - 1;  // interior piece boundaries
    if (nb < n_max + 1)
        throw std::invalid_argument("not enough pieces for requested Chebyshev order");
    const double dt = pulse.dt();

    Eigen::MatrixXd design(nb, n_max + 1);
    for (int k = 0; k < nb; ++k) {
        const double t = (k + 1) * dt;  // boundary between pieces k and k+1
        const double x = 2.0 * t / pulse.duration - 1.0;
        double tm2 = 1.0, tm1 = x;
        for (int j = 0; j <= n_max; ++j) {
            double tj;
            if (j == 0) tj = 1.0;
            else if (j == 1) tj = x;
            else {
                tj = 2.0 * x * tm1 - tm2;
                tm2 = tm1;
                tm1 = tj;
            }
            design(k, j) = tj;
        }
    }
    const auto qr = design.colPivHouseholderQr();

    // The phase sequence only defines the implied detuning up to the 2 pi
    // branch of each piece-to-piece difference: a smooth pulse can carry
    // genuine jumps above pi near the envelope edges, while a rough one is
    // best read modulo 2 pi. Fit both readings and keep the lower residual.
    Eigen::VectorXd best_c;
    double best_res = std::numeric_limits<double>::infinity();
    for (const std::vector<double>& phi :
         {pulse.phase, unwrap_phases(pulse.phase)}) {
        Eigen::VectorXd rhs(nb);
        for (int k = 0; k < nb; ++k)
            rhs(k) = (phi[static_cast<std::size_t>(k + 1)] -
                      phi[static_cast<std::size_t>(k)]) / dt;
        const Eigen::VectorXd c = qr.solve(rhs);
        const double res = std::sqrt((design * c - rhs).squaredNorm() / nb);
        if (res < best_res) {
            best_res = res;
            best_c = c;
        }
    }

    ChebyshevRefit out;
    out.detuning.coeffs.assign(best_c.data(), best_c.data() + best_c.size());
    out.residual_rms = best_res;
    if (residual_threshold > 0.0 && out.residual_rms > residual_threshold)
        out.residual_ok = false;
    return out;
}

ScanResult finetune_scan(const ChebyshevDetuning& coeffs, int index, double range,
                         int points, int n_pieces, double omega, double duration,
                         double edge_sigma, const PulseEvaluator& evaluator) {
    if (index < 0 || index >= static_cast<int>(coeffs.coeffs.size()))
        throw std::out_of_range("coefficient index out of range");
    if (points < 1) throw std::invalid_argument("scan needs at least one point");
    ScanResult out;
    out.best_fidelity = -1.0;
    const double nominal = coeffs.coeffs[static_cast<std::size_t>(index)];
    for (int i = 0; i < points; ++i) {
        const double value = points == 1
            ? nominal
            : nominal - range + 2.0 * range * i / (points - 1);
        ChebyshevDetuning c = coeffs;
        c.coeffs[static_cast<std::size_t>(index)] = value;
        const Pulse p = detuning_to_phase(c, n_pieces, omega, duration, edge_sigma);
        const double f = evaluator(p);
        out.points.push_back({value, f});
        if (f > out.best_fidelity) {
            out.best_fidelity = f;
            out.best_value = value;
        }
    }
    return out;
}

}  // namespace ryd
