// Six-level single-atom Hamiltonian and the blockaded two-atom model.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rydsim/pulse.hpp"

namespace ryd {

using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;

// H_sq with couplings Omega e^{-i phi}/2 (|0>-|r-3/2>, |1>-|r+3/2>) and
// Omega e^{-i phi}/(2 sqrt 3) (|0>-|r+1/2>, |1>-|r-1/2>); diagonal
// (-Delta_m, 0, -3 Delta_r, -2 Delta_r, -Delta_r, 0). Units of rad/s (hbar = 1).
Matrix6cd single_atom_hamiltonian(const GateParams& params, double phi, double omega_inst);

// One closed evolution subspace of the blockaded pair. The Hamiltonian is
// drift + omega_inst * (e^{-i phi} C + e^{i phi} C^dag) + detuning * n_ryd,
// which also gives the exact phase derivative for GRAPE.
struct Block {
    Eigen::VectorXd drift;            // diagonal drift (rad/s)
    Eigen::MatrixXcd coupling;        // C at unit Rabi frequency
    Eigen::VectorXd ryd_count;        // Rydberg excitation count per basis state
    Eigen::MatrixXd atom_ryd;         // dim x 2, the same count split per atom
    std::vector<std::string> labels;  // two-atom basis labels, fixed enumeration order
    std::vector<int> indices;         // positions in the 36-dim product basis
    Eigen::MatrixXcd static_h;        // extra Hermitian term (V tensor); empty if unused
    int initial = 0;                  // index of the computational basis state

    int dim() const { return static_cast<int>(drift.size()); }
    Eigen::MatrixXcd hamiltonian(double phi, double omega_inst,
                                 double detuning = 0.0) const;
};

struct BlockadeModel {
    GateParams params;
    bool blockaded = true;            // true: three 5-dim blocks; false: full 36-dim
    std::array<Block, 3> blocks;      // |00>, |01>, |11> subspaces (|10> mirrors |01>)
    Block full;                       // populated only in full 36-dim mode
    bool weak_blockade_warning = false;  // finite V with |V| <= Omega

    const Block& block(int k) const { return blocks[static_cast<std::size_t>(k)]; }
};

// Blockaded mode when params.blockade is +inf; otherwise the full two-atom
// model with a scalar V on every double-Rydberg pair (or a caller-supplied
// 16x16 coupling among the |r_i r_j> states, row-major over (i-2)*4+(j-2)).
BlockadeModel build_blockade_model(const GateParams& params);
BlockadeModel build_blockade_model(const GateParams& params,
                                   const Eigen::MatrixXcd& v_tensor);

// Restriction of a full-model 36x36 operator to one blockaded subspace basis.
Eigen::MatrixXcd restrict_to_block(const Eigen::MatrixXcd& op36, const Block& block,
                                   const Block& full);

}  // namespace ryd
