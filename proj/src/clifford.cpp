#include "rydsim/clifford.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ryd {

namespace {

using std::complex;

// Canonical global phase: first element with magnitude > 1e-9 made real positive.
Matrix2c canonicalize(const Matrix2c& u) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(u(j, i)) > 1e-9) {
                complex<double> ph = u(j, i) / std::abs(u(j, i));
                return u / ph;
            }
    throw std::runtime_error("zero matrix");
}

bool same_element(const Matrix2c& a, const Matrix2c& b) {
    return (canonicalize(a) - canonicalize(b)).norm() < 1e-8;
}

std::vector<Matrix2c> build_group() {
    const complex<double> i(0.0, 1.0);
    Matrix2c h, s;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    s << 1, 0, 0, i;

    std::vector<Matrix2c> group;
    group.push_back(Matrix2c::Identity());
    // Closure under the generators.
    for (std::size_t k = 0; k < group.size(); ++k) {
        for (const Matrix2c* g : {&h, &s}) {
            Matrix2c cand = canonicalize((*g) * group[k]);
            bool seen = false;
            for (const auto& e : group)
                if (same_element(e, cand)) { seen = true; break; }
            if (!seen) group.push_back(cand);
        }
    }
    if (group.size() != 24) throw std::runtime_error("Clifford closure failed");
    return group;
}

}  // namespace

const std::vector<Matrix2c>& clifford_group() {
    static const std::vector<Matrix2c> group = build_group();
    return group;
}

int clifford_inverse_index(const Matrix2c& u) {
    const auto& group = clifford_group();
    for (std::size_t k = 0; k < group.size(); ++k) {
        // g = U^dag up to phase iff |tr(g U)| = 2.
        if (std::abs(std::abs((group[k] * u).trace()) - 2.0) < 1e-6)
            return static_cast<int>(k);
    }
    throw std::runtime_error("matrix is not a Clifford element");
}

int clifford_compose(int later, int earlier) {
    const auto& group = clifford_group();
    const Matrix2c prod = group[static_cast<std::size_t>(later)] *
                          group[static_cast<std::size_t>(earlier)];
    for (std::size_t k = 0; k < group.size(); ++k)
        if (same_element(group[k], prod)) return static_cast<int>(k);
    throw std::runtime_error("Clifford composition fell outside the group");
}

}  // namespace ryd
