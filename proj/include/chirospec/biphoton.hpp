// biphoton.hpp - joint spectral amplitudes of signal/idler photon pairs
//
// Frequencies are detunings in units of Gamma: the signal axis is measured
// from the |0> -> |1> transition, the idler axis from an arbitrary origin.
// Amplitudes are peak-normalized (maximum 1 times `scale`) unless sampled
// through jsa_grid with normalization on.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace chirospec {

using cplx = std::complex<double>;

enum class JsaKind { UncorrelatedGaussian, EntangledSpdc, ZeroBandwidthCorrelated };

// Gaussian signal envelope phi_s used by the zero-bandwidth limit.
struct SignalEnvelope {
    double center{0.0};
    double width{1.0};

    double operator()(double omega) const noexcept;
    bool operator==(const SignalEnvelope&) const = default;
};

struct BiphotonAmplitude {
    JsaKind kind{JsaKind::UncorrelatedGaussian};
    double omegaSc{0.0};
    double omegaLc{0.0};
    double sigma{1.0};   // UncorrelatedGaussian width
    double omegaP{0.0};  // pump center
    double sigmaP{1.0};  // pump width
    double tS{0.0};      // maximal crystal delays, units of 1/Gamma
    double tL{0.0};
    SignalEnvelope envelope{};
    double scale{1.0};   // overall positive amplitude factor

    static BiphotonAmplitude uncorrelated(double omega_sc, double omega_lc, double sigma);

    // omegaP defaults to omega_sc + omega_lc (energy matching).
    static BiphotonAmplitude entangled(double omega_sc, double omega_lc, double sigma_p,
                                       double t_s, double t_l);
    static BiphotonAmplitude entangled(double omega_sc, double omega_lc, double sigma_p,
                                       double t_s, double t_l, double omega_p);

    static BiphotonAmplitude zero_bandwidth(double omega_p, SignalEnvelope envelope);

    bool samplable() const noexcept { return kind != JsaKind::ZeroBandwidthCorrelated; }

    // Throws InvalidParameter on sigma <= 0, sigmaP <= 0, negative delays,
    // non-positive scale or non-finite fields.
    void validate() const;

    // Narrowest spectral feature the sampling grids must resolve:
    // min(1, 1/tS, 1/tL, sigma or sigmaP) with zero delays skipped.
    double resolution_scale(double gamma = 1.0) const noexcept;

    bool operator==(const BiphotonAmplitude&) const = default;
};

// psi(omega_s, omega_l). Throws UnsupportedKind for ZeroBandwidthCorrelated.
cplx jsa_value(const BiphotonAmplitude& amp, double omega_s, double omega_l);

// Gaussian profile of |psi(., omega_l)| along the signal axis at fixed idler.
struct ConditionalProfile {
    double center{0.0};
    double width{0.0};  // standard deviation of the Gaussian in omega_s
};

ConditionalProfile signal_profile_given_idler(const BiphotonAmplitude& amp, double omega_l);

class FrequencyGrid {
public:
    FrequencyGrid() = default;

    // Uniform inclusive grid center +- n*step with n*step >= half_width.
    // Throws InvalidParameter if step <= 0 or the grid has fewer than 5 steps per side.
    static FrequencyGrid make(double center, double half_width, double step);

    double center() const noexcept { return center_; }
    double half_width() const noexcept { return half_width_; }
    double step() const noexcept { return step_; }
    std::span<const double> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

    bool operator==(const FrequencyGrid&) const = default;

private:
    double center_{0.0};
    double half_width_{0.0};
    double step_{0.0};
    std::vector<double> points_;
};

struct JsaTable {
    FrequencyGrid signal;
    FrequencyGrid idler;
    std::vector<cplx> values;  // row-major, rows = signal

    const cplx& at(std::size_t i, std::size_t j) const { return values[i * idler.size() + j]; }
};

// Throws GridTooCoarse if a grid step exceeds resolution_scale()/10.
void check_resolution(const BiphotonAmplitude& amp, const FrequencyGrid& grid, double gamma = 1.0);

// Table[i][j] = jsa_value(signal[i], idler[j]); normalized so that
// sum |psi|^2 dS dL = 1 when `normalize` is set.
JsaTable jsa_grid(const BiphotonAmplitude& amp, const FrequencyGrid& signal,
                  const FrequencyGrid& idler, bool normalize = true);

struct GridPair {
    FrequencyGrid signal;
    FrequencyGrid idler;
};

// Grids centred at (omegaSc, omegaLc). Half-width 6 max(width, gamma), widened on
// the signal axis so every lambda_i +- 6 gamma is covered; step is
// min(gamma, 1/tS, 1/tL, width)/20.
GridPair default_grid(const BiphotonAmplitude& amp, double gamma,
                      std::span<const double> lambdas = {});

// Signal grid for the mode-sum quadrature at a fixed idler frequency: the
// default signal grid, widened to hold the conditional profile +- 8 widths.
FrequencyGrid signal_quadrature_grid(const BiphotonAmplitude& amp, double gamma, double omega_l);

}  // namespace chirospec
