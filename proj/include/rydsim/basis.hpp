// Single-atom level basis for the metastable qubit + 3S1 F=3/2 Rydberg manifold.
#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ryd {

// Index order matches the Hamiltonian row order.
enum Level : int {
    kQubit0 = 0,   // |0>
    kQubit1 = 1,   // |1>
    kRydM32 = 2,   // |r_{-3/2}>
    kRydM12 = 3,   // |r_{-1/2}>
    kRydP12 = 4,   // |r_{+1/2}>
    kRydP32 = 5,   // |r_{+3/2}>
};

constexpr int kNumLevels = 6;

inline const std::array<std::string, kNumLevels>& level_labels() {
    static const std::array<std::string, kNumLevels> labels = {
        "|0>", "|1>", "|r-3/2>", "|r-1/2>", "|r+1/2>", "|r+3/2>"};
    return labels;
}

inline const std::string& level_label(int index) {
    if (index < 0 || index >= kNumLevels) throw std::out_of_range("level index");
    return level_labels()[static_cast<std::size_t>(index)];
}

inline int level_index(const std::string& label) {
    const auto& labels = level_labels();
    for (int i = 0; i < kNumLevels; ++i)
        if (labels[static_cast<std::size_t>(i)] == label) return i;
    throw std::out_of_range("unknown level label: " + label);
}

inline bool is_rydberg(int index) { return index >= kRydM32; }

}  // namespace ryd
