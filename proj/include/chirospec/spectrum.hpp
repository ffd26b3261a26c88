// spectrum.hpp - frequency-resolved coincidence observables
//
// All absorbed physical constants (detector sensitivity, quantization length,
// dipole moment, density of modes) form one positive prefactor fixed to 1.

#pragma once

#include "chirospec/biphoton.hpp"
#include "chirospec/model.hpp"

#include <array>
#include <utility>
#include <vector>

namespace chirospec {

struct DetectorPair {
    double deltaSBar{0.0};  // signal detector, detuned from the |0>-|1> transition
    double omegaLBar{0.0};  // idler detector
};

struct SpectrumPoint {
    double deltaSBar{0.0};
    double value{0.0};
    bool operator==(const SpectrumPoint&) const = default;
};

struct SpectrumCurve {
    Chirality chirality{Chirality::Right};
    double omegaLBar{0.0};
    std::vector<SpectrumPoint> points;

    std::vector<double> values() const;
    bool operator==(const SpectrumCurve&) const = default;
};

// |psi(deltaSBar, omegaLBar)|^2: coincidences without the molecule.
double background_point(const BiphotonAmplitude& amp, const DetectorPair& det);

// Transmission spectrum at fixed idler frequency. The mode sums
//   Q_i = int dw psi(w, omegaLBar) / (lambda_i - w + i Gamma)
// are evaluated once by trapezoidal quadrature; evaluation at a signal
// detector frequency is then O(1).
class TransmissionKernel {
public:
    TransmissionKernel(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                       const NoiseParams& noise, double omega_l_bar, const FrequencyGrid& quadrature);

    double operator()(double delta_s_bar) const;

    const std::array<cplx, 3>& mode_sums() const noexcept { return mode_sums_; }

private:
    BiphotonAmplitude amp_;
    std::array<double, 3> lambdas_{};
    std::array<double, 3> weights_{};
    std::array<cplx, 3> mode_sums_{};
    double gamma_{1.0};
    double omega_l_bar_{0.0};
};

double transmission_point(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                          const NoiseParams& noise, const DetectorPair& det,
                          const FrequencyGrid& quadrature);

// Uses signal_quadrature_grid() for the mode sum; scan holds the signal
// detector frequencies.
SpectrumCurve transmission_curve(const DriveConfig& cfg, const BiphotonAmplitude& amp,
                                 const NoiseParams& noise, double omega_l_bar,
                                 const FrequencyGrid& scan);

// Left and right curves from one right-handed drive config.
std::pair<SpectrumCurve, SpectrumCurve> transmission_curve_pair(const DriveConfig& cfg,
                                                                const BiphotonAmplitude& amp,
                                                                const NoiseParams& noise,
                                                                double omega_l_bar,
                                                                const FrequencyGrid& scan);

// Pinned signal detuning imposed by the delta correlation: omegaP - omegaLBar.
double pinned_signal_detuning(const BiphotonAmplitude& amp, double omega_l_bar) noexcept;

// Zero-bandwidth limit using only the dressed state with the largest |eta1|^2.
// Returns 0 unless det.deltaSBar sits on the pinned detuning.
double zero_bandwidth_point(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                            const NoiseParams& noise, const DetectorPair& det);

// zero_bandwidth_point evaluated on the pinned detuning.
double zero_bandwidth_pinned(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                             const NoiseParams& noise, double omega_l_bar);

}  // namespace chirospec
