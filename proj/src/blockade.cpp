#include "rydsim/blockade.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "rydsim/basis.hpp"

namespace ryd {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;
using std::complex;

// Raising part of the drive at unit Rabi frequency: H_drive = e^{-i phi} C + h.c.
Eigen::Matrix<double, 6, 6> single_atom_coupling() {
    Eigen::Matrix<double, 6, 6> c = Eigen::Matrix<double, 6, 6>::Zero();
    const double s3 = 1.0 / (2.0 * std::sqrt(3.0));
    c(kQubit0, kRydM32) = 0.5;
    c(kQubit0, kRydP12) = s3;
    c(kQubit1, kRydM12) = s3;
    c(kQubit1, kRydP32) = 0.5;
    return c;
}

Eigen::Matrix<double, 6, 1> single_atom_drift(const GateParams& p) {
    Eigen::Matrix<double, 6, 1> d;
    d << -p.delta_m, 0.0, -3.0 * p.delta_r, -2.0 * p.delta_r, -p.delta_r, 0.0;
    return d;
}

std::string pair_label(int i, int j) {
    auto one = [](int k) {
        const std::string& l = level_label(k);
        return l.substr(1, l.size() - 2);  // strip |>
    };
    return "|" + one(i) + "," + one(j) + ">";
}

Block make_block(const GateParams& params, const std::vector<int>& indices) {
    const auto c1 = single_atom_coupling();
    const auto d1 = single_atom_drift(params);
    const int n = static_cast<int>(indices.size());
    Block b;
    b.indices = indices;
    b.drift = VectorXd::Zero(n);
    b.coupling = MatrixXcd::Zero(n, n);
    b.ryd_count = VectorXd::Zero(n);
    b.atom_ryd = Eigen::MatrixXd::Zero(n, 2);
    for (int a = 0; a < n; ++a) {
        const int ia = indices[static_cast<std::size_t>(a)] / 6;
        const int ja = indices[static_cast<std::size_t>(a)] % 6;
        b.drift(a) = d1(ia) + d1(ja);
        b.atom_ryd(a, 0) = is_rydberg(ia) ? 1.0 : 0.0;
        b.atom_ryd(a, 1) = is_rydberg(ja) ? 1.0 : 0.0;
        b.ryd_count(a) = b.atom_ryd(a, 0) + b.atom_ryd(a, 1);
        b.labels.push_back(pair_label(ia, ja));
        for (int bb = 0; bb < n; ++bb) {
            const int ib = indices[static_cast<std::size_t>(bb)] / 6;
            const int jb = indices[static_cast<std::size_t>(bb)] % 6;
            // C2 = C (x) I + I (x) C
            double v = 0.0;
            if (ja == jb) v += c1(ia, ib);
            if (ia == ib) v += c1(ja, jb);
            b.coupling(a, bb) = v;
        }
    }
    return b;
}

}  // namespace

Matrix6cd single_atom_hamiltonian(const GateParams& params, double phi, double omega_inst) {
    if (omega_inst < 0.0) throw std::invalid_argument("omega_inst must be >= 0");
    const auto c = single_atom_coupling();
    const complex<double> e(std::cos(phi), -std::sin(phi));  // e^{-i phi}
    Matrix6cd h = omega_inst * (e * c.cast<complex<double>>() +
                                std::conj(e) * c.transpose().cast<complex<double>>());
    h += single_atom_drift(params).cast<complex<double>>().asDiagonal();
    return h;
}

Eigen::MatrixXcd Block::hamiltonian(double phi, double omega_inst, double detuning) const {
    const complex<double> e(std::cos(phi), -std::sin(phi));
    MatrixXcd h = omega_inst * (e * coupling + std::conj(e) * coupling.adjoint());
    h += (drift + detuning * ryd_count).cast<complex<double>>().asDiagonal();
    if (static_h.size() > 0) h += static_h;
    return h;
}

BlockadeModel build_blockade_model(const GateParams& params) {
    return build_blockade_model(params, MatrixXcd());
}

BlockadeModel build_blockade_model(const GateParams& params, const MatrixXcd& v_tensor) {
    params.validate();
    BlockadeModel m;
    m.params = params;
    m.blockaded = std::isinf(params.blockade) && v_tensor.size() == 0;

    // Paper basis order for each subspace.
    const std::vector<int> b00 = {0 * 6 + 0, 0 * 6 + kRydM32, 0 * 6 + kRydP12,
                                  kRydM32 * 6 + 0, kRydP12 * 6 + 0};
    const std::vector<int> b01 = {0 * 6 + 1, 0 * 6 + kRydM12, 0 * 6 + kRydP32,
                                  kRydM32 * 6 + 1, kRydP12 * 6 + 1};
    const std::vector<int> b11 = {1 * 6 + 1, 1 * 6 + kRydM12, 1 * 6 + kRydP32,
                                  kRydM12 * 6 + 1, kRydP32 * 6 + 1};
    m.blocks[0] = make_block(params, b00);
    m.blocks[1] = make_block(params, b01);
    m.blocks[2] = make_block(params, b11);

    if (!m.blockaded) {
        if (std::abs(params.blockade) <= params.omega) {
            m.weak_blockade_warning = true;
            std::cerr << "warning: |V| <= Omega, blockade assumption invalid\n";
        }
        std::vector<int> all(36);
        for (int i = 0; i < 36; ++i) all[static_cast<std::size_t>(i)] = i;
        m.full = make_block(params, all);
        if (v_tensor.size() > 0) {
            if (v_tensor.rows() != 16 || v_tensor.cols() != 16)
                throw std::invalid_argument("V tensor must be 16x16 over |r_i r_j> pairs");
            m.full.static_h = MatrixXcd::Zero(36, 36);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l)
                            m.full.static_h((i + 2) * 6 + (j + 2), (k + 2) * 6 + (l + 2)) =
                                v_tensor(i * 4 + j, k * 4 + l);
        } else {
            // Scalar V on every double-Rydberg pair.
            for (int a = 0; a < 36; ++a)
                if (m.full.ryd_count(a) > 1.5) m.full.drift(a) += params.blockade;
        }
    }
    return m;
}

Eigen::MatrixXcd restrict_to_block(const MatrixXcd& op36, const Block& block,
                                   const Block& full) {
    (void)full;
    const int n = block.dim();
    MatrixXcd out(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out(a, b) = op36(block.indices[static_cast<std::size_t>(a)],
                             block.indices[static_cast<std::size_t>(b)]);
    return out;
}

}  // namespace ryd
