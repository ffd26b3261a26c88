// presets.hpp - reference parameter set for the strong-dissipation study
// (all couplings 0.1 Gamma, resonant drives, Gamma = 1).

#pragma once

#include "chirospec/analysis.hpp"
#include "chirospec/biphoton.hpp"
#include "chirospec/model.hpp"

#include <cmath>
#include <vector>

namespace chirospec::presets {

inline DriveConfig strong_dissipation_drive() {
    return DriveConfig{0.1, 0.1, 0.1, 0.0, 0.0, Chirality::Right};
}

inline NoiseParams unit_noise() { return NoiseParams{1.0}; }

// Uncorrelated pair, sigma = Gamma, both photons centred on their origins.
inline BiphotonAmplitude classical_probe() { return BiphotonAmplitude::uncorrelated(0.0, 0.0, 1.0); }

// Entangled pair with sigma_p = Gamma, tS = 24/Gamma, tL = 25/Gamma.
inline BiphotonAmplitude entangled_probe() {
    return BiphotonAmplitude::entangled(0.0, 0.0, 1.0, 24.0, 25.0);
}

// Signal detector scan: [-6, 6] Gamma in steps of 0.004 Gamma.
inline FrequencyGrid detector_scan() { return FrequencyGrid::make(0.0, 6.0, 0.004); }

// Idler detector range covering both sign crossings near |omega_l| = Gamma.
inline constexpr double kIdlerMin = -2.0;
inline constexpr double kIdlerMax = 2.0;
inline constexpr double kIdlerFineStep = 0.001;

// Uniform inclusive axis lo + k (hi - lo)/(count - 1).
inline std::vector<double> linear_axis(double lo, double hi, std::size_t count) {
    std::vector<double> out;
    if (count == 1) return {lo};
    out.reserve(count);
    const double span = hi - lo;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(lo + span * static_cast<double>(k) / static_cast<double>(count - 1));
    }
    return out;
}

// Inclusive lo, lo + step, ... <= hi (with a 1e-9 relative slack on the end point).
inline std::vector<double> stepped_axis(double lo, double hi, double step) {
    std::vector<double> out;
    const double span = hi - lo;
    const auto n = static_cast<std::size_t>(std::floor(span / step * (1.0 + 1e-9) + 1e-9));
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
    return out;
}

}  // namespace chirospec::presets
