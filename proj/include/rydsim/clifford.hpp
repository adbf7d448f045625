// The 24-element single-qubit Clifford group with exact inverse lookup.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ryd {

using Matrix2c = Eigen::Matrix2cd;

// Elements in a fixed canonical order; index 0 is the identity.
const std::vector<Matrix2c>& clifford_group();

// Index of the group element equal to U^dag up to a global phase.
int clifford_inverse_index(const Matrix2c& u);

// Composition c2 * c1 as a group index.
int clifford_compose(int later, int earlier);

}  // namespace ryd
