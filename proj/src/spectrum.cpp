#include "chirospec/spectrum.hpp"

#include "chirospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chirospec {

std::vector<double> SpectrumCurve::values() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.value);
    return out;
}

double background_point(const BiphotonAmplitude& amp, const DetectorPair& det) {
    return std::norm(jsa_value(amp, det.deltaSBar, det.omegaLBar));
}

namespace {

// 1 / (lambda - w + i gamma) without going through complex division.
inline cplx resolvent(double lambda, double w, double gamma) noexcept {
    const double x = lambda - w;
    const double d = x * x + gamma * gamma;
    return {x / d, -gamma / d};
}

}  // namespace

TransmissionKernel::TransmissionKernel(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                                       const NoiseParams& noise, double omega_l_bar,
                                       const FrequencyGrid& quadrature)
    : amp_(amp), lambdas_(dressed.lambdas), weights_(dressed.weights()),
      gamma_(noise.gamma), omega_l_bar_(omega_l_bar) {
    if (!amp.samplable()) throw UnsupportedKind("transmission: amplitude kind cannot be sampled");
    noise.validate();
    check_resolution(amp, quadrature, noise.gamma);

    const auto pts = quadrature.points();
    std::vector<cplx> psi(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) psi[k] = jsa_value(amp, pts[k], omega_l_bar);

    const double h = quadrature.step();
    const std::size_t last = pts.size() - 1;
    for (std::size_t i = 0; i < 3; ++i) {
        cplx sum{0.0, 0.0};
        for (std::size_t k = 1; k < last; ++k) sum += psi[k] * resolvent(lambdas_[i], pts[k], gamma_);
        sum += 0.5 * (psi[0] * resolvent(lambdas_[i], pts[0], gamma_) +
                      psi[last] * resolvent(lambdas_[i], pts[last], gamma_));
        mode_sums_[i] = h * sum;
        if (!std::isfinite(mode_sums_[i].real()) || !std::isfinite(mode_sums_[i].imag())) {
            throw NonFiniteResult("transmission: mode-sum quadrature is not finite");
        }
    }
}

double TransmissionKernel::operator()(double delta_s_bar) const {
    const cplx psi_bar = std::conj(jsa_value(amp_, delta_s_bar, omega_l_bar_));
    double p = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        p -= weights_[i] * (psi_bar * mode_sums_[i] * resolvent(lambdas_[i], delta_s_bar, gamma_)).real();
    }
    if (!std::isfinite(p)) {
        throw NonFiniteResult("transmission: value at delta_s = " + std::to_string(delta_s_bar) +
                              " is not finite");
    }
    return p;
}

double transmission_point(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                          const NoiseParams& noise, const DetectorPair& det,
                          const FrequencyGrid& quadrature) {
    return TransmissionKernel(dressed, amp, noise, det.omegaLBar, quadrature)(det.deltaSBar);
}

namespace {

SpectrumCurve evaluate_curve(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                             const NoiseParams& noise, double omega_l_bar,
                             const FrequencyGrid& quadrature, const FrequencyGrid& scan) {
    const TransmissionKernel kernel(dressed, amp, noise, omega_l_bar, quadrature);
    SpectrumCurve curve{dressed.chirality, omega_l_bar, {}};
    curve.points.reserve(scan.size());
    for (double ds : scan.points()) curve.points.push_back({ds, kernel(ds)});
    return curve;
}

}  // namespace

SpectrumCurve transmission_curve(const DriveConfig& cfg, const BiphotonAmplitude& amp,
                                 const NoiseParams& noise, double omega_l_bar,
                                 const FrequencyGrid& scan) {
    noise.validate();
    amp.validate();
    const auto quadrature = signal_quadrature_grid(amp, noise.gamma, omega_l_bar);
    return evaluate_curve(dressed_states(cfg), amp, noise, omega_l_bar, quadrature, scan);
}

std::pair<SpectrumCurve, SpectrumCurve> transmission_curve_pair(const DriveConfig& cfg,
                                                                const BiphotonAmplitude& amp,
                                                                const NoiseParams& noise,
                                                                double omega_l_bar,
                                                                const FrequencyGrid& scan) {
    noise.validate();
    amp.validate();
    const auto quadrature = signal_quadrature_grid(amp, noise.gamma, omega_l_bar);
    return {evaluate_curve(dressed_states(cfg.with_chirality(Chirality::Left)), amp, noise,
                           omega_l_bar, quadrature, scan),
            evaluate_curve(dressed_states(cfg.with_chirality(Chirality::Right)), amp, noise,
                           omega_l_bar, quadrature, scan)};
}

double pinned_signal_detuning(const BiphotonAmplitude& amp, double omega_l_bar) noexcept {
    return amp.omegaP - omega_l_bar;
}

double zero_bandwidth_point(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                            const NoiseParams& noise, const DetectorPair& det) {
    if (amp.kind != JsaKind::ZeroBandwidthCorrelated) {
        throw WrongKind("zero_bandwidth_point: amplitude must be ZeroBandwidthCorrelated");
    }
    noise.validate();
    const double pinned = pinned_signal_detuning(amp, det.omegaLBar);
    if (std::abs(det.deltaSBar - pinned) > 1e-12 * std::max(1.0, std::abs(pinned))) return 0.0;

    const std::size_t top = dressed.dominant_index();
    const double lambda = dressed.lambdas[top];
    const double weight = dressed.weights()[top];
    const cplx num = amp.scale * amp.scale * amp.envelope(det.deltaSBar) * amp.envelope(pinned);
    const cplx value = num * resolvent(lambda, det.deltaSBar, noise.gamma) *
                       resolvent(lambda, pinned, noise.gamma);
    const double p = -weight * value.real();
    if (!std::isfinite(p)) throw NonFiniteResult("zero_bandwidth_point: value is not finite");
    return p;
}

double zero_bandwidth_pinned(const DressedTriad& dressed, const BiphotonAmplitude& amp,
                             const NoiseParams& noise, double omega_l_bar) {
    return zero_bandwidth_point(dressed, amp, noise,
                                {pinned_signal_detuning(amp, omega_l_bar), omega_l_bar});
}

}  // namespace chirospec
