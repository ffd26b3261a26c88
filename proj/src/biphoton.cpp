#include "chirospec/biphoton.hpp"

#include "chirospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chirospec {

double SignalEnvelope::operator()(double omega) const noexcept {
    const double x = (omega - center) / width;
    return std::exp(-0.5 * x * x);
}

BiphotonAmplitude BiphotonAmplitude::uncorrelated(double omega_sc, double omega_lc, double sigma) {
    BiphotonAmplitude a;
    a.kind = JsaKind::UncorrelatedGaussian;
    a.omegaSc = omega_sc;
    a.omegaLc = omega_lc;
    a.sigma = sigma;
    a.envelope = {omega_sc, sigma};
    return a;
}

BiphotonAmplitude BiphotonAmplitude::entangled(double omega_sc, double omega_lc, double sigma_p,
                                               double t_s, double t_l) {
    return entangled(omega_sc, omega_lc, sigma_p, t_s, t_l, omega_sc + omega_lc);
}

BiphotonAmplitude BiphotonAmplitude::entangled(double omega_sc, double omega_lc, double sigma_p,
                                               double t_s, double t_l, double omega_p) {
    BiphotonAmplitude a;
    a.kind = JsaKind::EntangledSpdc;
    a.omegaSc = omega_sc;
    a.omegaLc = omega_lc;
    a.sigmaP = sigma_p;
    a.tS = t_s;
    a.tL = t_l;
    a.omegaP = omega_p;
    a.envelope = {omega_sc, sigma_p};
    return a;
}

BiphotonAmplitude BiphotonAmplitude::zero_bandwidth(double omega_p, SignalEnvelope envelope) {
    BiphotonAmplitude a;
    a.kind = JsaKind::ZeroBandwidthCorrelated;
    a.omegaP = omega_p;
    a.omegaSc = envelope.center;
    a.sigma = envelope.width;
    a.envelope = envelope;
    return a;
}

void BiphotonAmplitude::validate() const {
    const double fields[] = {omegaSc, omegaLc, sigma, omegaP, sigmaP, tS, tL,
                             envelope.center, envelope.width, scale};
    for (double f : fields) {
        if (!std::isfinite(f)) throw InvalidParameter("biphoton: all fields must be finite");
    }
    if (sigma <= 0.0) throw InvalidParameter("sigma > 0");
    if (sigmaP <= 0.0) throw InvalidParameter("sigma_p > 0");
    if (tS < 0.0) throw InvalidParameter("t_s >= 0");
    if (tL < 0.0) throw InvalidParameter("t_l >= 0");
    if (envelope.width <= 0.0) throw InvalidParameter("envelope width > 0");
    if (scale <= 0.0) throw InvalidParameter("scale > 0");
}

namespace {

double spectral_width(const BiphotonAmplitude& amp) noexcept {
    switch (amp.kind) {
        case JsaKind::UncorrelatedGaussian: return amp.sigma;
        case JsaKind::EntangledSpdc: return amp.sigmaP;
        case JsaKind::ZeroBandwidthCorrelated: return amp.envelope.width;
    }
    return amp.sigma;
}

}  // namespace

double BiphotonAmplitude::resolution_scale(double gamma) const noexcept {
    double s = std::min(gamma, spectral_width(*this));
    if (kind == JsaKind::EntangledSpdc) {
        if (tS > 0.0) s = std::min(s, 1.0 / tS);
        if (tL > 0.0) s = std::min(s, 1.0 / tL);
    }
    return s;
}

cplx jsa_value(const BiphotonAmplitude& amp, double omega_s, double omega_l) {
    switch (amp.kind) {
        case JsaKind::UncorrelatedGaussian: {
            const double ds = omega_s - amp.omegaSc;
            const double dl = omega_l - amp.omegaLc;
            return amp.scale * std::exp(-(ds * ds + dl * dl) / (2.0 * amp.sigma * amp.sigma));
        }
        case JsaKind::EntangledSpdc: {
            const double detune = omega_s + omega_l - amp.omegaP;
            const double kappa = (omega_s - amp.omegaSc) * amp.tS / 2.0 +
                                 (omega_l - amp.omegaLc) * amp.tL / 2.0;
            return amp.scale * std::exp(-detune * detune / (2.0 * amp.sigmaP * amp.sigmaP) -
                                        kappa * kappa);
        }
        case JsaKind::ZeroBandwidthCorrelated:
            break;
    }
    throw UnsupportedKind("jsa_value: zero-bandwidth amplitudes are handled analytically");
}

ConditionalProfile signal_profile_given_idler(const BiphotonAmplitude& amp, double omega_l) {
    switch (amp.kind) {
        case JsaKind::UncorrelatedGaussian:
            return {amp.omegaSc, amp.sigma};
        case JsaKind::EntangledSpdc: {
            // -ln psi = (w + omega_l - omegaP)^2 / (2 sigmaP^2) + (tS/2 w + k0)^2
            const double k0 = -0.5 * amp.tS * amp.omegaSc + 0.5 * amp.tL * (omega_l - amp.omegaLc);
            const double inv_var_p = 1.0 / (amp.sigmaP * amp.sigmaP);
            const double curvature = inv_var_p + 0.5 * amp.tS * amp.tS;
            const double center = ((amp.omegaP - omega_l) * inv_var_p - amp.tS * k0) / curvature;
            return {center, 1.0 / std::sqrt(curvature)};
        }
        case JsaKind::ZeroBandwidthCorrelated:
            return {amp.omegaP - omega_l, 0.0};
    }
    return {};
}

FrequencyGrid FrequencyGrid::make(double center, double half_width, double step) {
    if (!std::isfinite(center) || !std::isfinite(half_width) || !std::isfinite(step)) {
        throw InvalidParameter("grid: non-finite parameter");
    }
    if (step <= 0.0) throw InvalidParameter("grid: step > 0");
    const double ratio = half_width / step;
    const auto n = static_cast<long long>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
    if (n < 5) throw InvalidParameter("grid: half_width >= 5 step");

    FrequencyGrid g;
    g.center_ = center;
    g.step_ = step;
    g.half_width_ = static_cast<double>(n) * step;
    g.points_.reserve(static_cast<std::size_t>(2 * n + 1));
    for (long long k = -n; k <= n; ++k) {
        g.points_.push_back(center + static_cast<double>(k) * step);
    }
    return g;
}

void check_resolution(const BiphotonAmplitude& amp, const FrequencyGrid& grid, double gamma) {
    const double limit = amp.resolution_scale(gamma) / 10.0;
    if (grid.step() > limit) {
        throw GridTooCoarse("grid step " + std::to_string(grid.step()) +
                            " exceeds resolution limit " + std::to_string(limit));
    }
}

JsaTable jsa_grid(const BiphotonAmplitude& amp, const FrequencyGrid& signal,
                  const FrequencyGrid& idler, bool normalize) {
    if (!amp.samplable()) throw UnsupportedKind("jsa_grid: amplitude kind cannot be sampled");
    check_resolution(amp, signal);
    check_resolution(amp, idler);

    JsaTable t{signal, idler, {}};
    t.values.reserve(signal.size() * idler.size());
    for (double ws : signal.points()) {
        for (double wl : idler.points()) t.values.push_back(jsa_value(amp, ws, wl));
    }
    if (normalize) {
        double sum = 0.0;
        for (const auto& v : t.values) sum += std::norm(v);
        const double norm = std::sqrt(sum * signal.step() * idler.step());
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NonFiniteResult("jsa_grid: amplitude vanishes on the grid");
        }
        for (auto& v : t.values) v /= norm;
    }
    return t;
}

GridPair default_grid(const BiphotonAmplitude& amp, double gamma, std::span<const double> lambdas) {
    const double width = spectral_width(amp);
    const double step = amp.resolution_scale(gamma) / 20.0;

    const double base = 6.0 * std::max(width, gamma);
    double signal_half = base;
    for (double l : lambdas) signal_half = std::max(signal_half, std::abs(l - amp.omegaSc) + 6.0 * gamma);

    return {FrequencyGrid::make(amp.omegaSc, signal_half, step),
            FrequencyGrid::make(amp.omegaLc, base, step)};
}

FrequencyGrid signal_quadrature_grid(const BiphotonAmplitude& amp, double gamma, double omega_l) {
    const double width = spectral_width(amp);
    const double step = amp.resolution_scale(gamma) / 20.0;
    const auto profile = signal_profile_given_idler(amp, omega_l);
    const double half = std::max(6.0 * std::max(width, gamma),
                                 std::abs(profile.center - amp.omegaSc) + 8.0 * profile.width);
    return FrequencyGrid::make(amp.omegaSc, half, step);
}

}  // namespace chirospec
