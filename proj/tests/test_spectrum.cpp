#include "chirospec/errors.hpp"
#include "chirospec/presets.hpp"
#include "chirospec/spectrum.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace chirospec;

namespace {

double curve_max(const SpectrumCurve& c) {
    double m = 0.0;
    for (const auto& p : c.points) m = std::max(m, std::abs(p.value));
    return m;
}

DressedTriad single_level(double lambda) {
    DressedTriad d;
    d.lambdas = {lambda, lambda + 50.0, lambda + 100.0};
    d.eta1 = {1.0, 0.0, 0.0};
    d.vectors = Eigen::Matrix3cd::Identity();
    return d;
}

}  // namespace

TEST_CASE("background") {
    const auto u = presets::classical_probe();
    CHECK(background_point(u, {0.0, 0.0}) == 1.0);
    CHECK(background_point(u, {10.0, 0.0}) < 1e-20);
    CHECK(background_point(presets::entangled_probe(), {0.05, -0.048}) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK_THROWS_AS(background_point(BiphotonAmplitude::zero_bandwidth(0.0, {}), {0.0, 0.0}), UnsupportedKind);
}

TEST_CASE("quadrature agrees with a dense Riemann sum") {
    const auto noise = presets::unit_noise();
    for (auto c : {Chirality::Right, Chirality::Left}) {
        const auto d = dressed_states(presets::strong_dissipation_drive().with_chirality(c));

        SUBCASE("uncorrelated") {
            const auto amp = presets::classical_probe();
            const double wl = 0.4;
            const auto grid = signal_quadrature_grid(amp, 1.0, wl);
            const TransmissionKernel k(d, amp, noise, wl, grid);
            for (double ds : {-2.0, -0.7, 0.0, 0.3, 1.1}) {
                const double ref = oracle::transmission(
                    d.lambdas, d.weights(), 1.0, [](double x, double y) { return oracle::gauss_jsa(x, y, 1.0); },
                    ds, wl, -12.0, 12.0, 96000);
                CHECK(std::abs(k(ds) - ref) < 1e-9);
            }
        }
        SUBCASE("entangled") {
            const auto amp = presets::entangled_probe();
            for (double wl : {-1.0, 0.0, 0.99}) {
                const auto grid = signal_quadrature_grid(amp, 1.0, wl);
                const TransmissionKernel k(d, amp, noise, wl, grid);
                for (double ds : {-1.0, -0.05, 0.0, 0.6}) {
                    const double ref = oracle::transmission(
                        d.lambdas, d.weights(), 1.0,
                        [](double x, double y) { return oracle::spdc_jsa(x, y, 1.0, 24.0, 25.0); }, ds, wl, -8.0,
                        8.0, 200000);
                    CHECK(std::abs(k(ds) - ref) < 1e-9);
                    CHECK(k(ds) == transmission_point(d, amp, noise, {ds, wl}, grid));
                }
            }
        }
    }
}

TEST_CASE("classical curves at the reference drive nearly coincide") {
    const auto [l, r] = transmission_curve_pair(presets::strong_dissipation_drive(), presets::classical_probe(),
                                                presets::unit_noise(), 0.0, presets::detector_scan());
    const std::size_t mid = l.points.size() / 2;
    REQUIRE(l.points[mid].deltaSBar == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(l.points[mid].value - r.points[mid].value) < 0.01 * curve_max(l));
}

TEST_CASE("pair evaluation equals separate evaluation") {
    const auto cfg = presets::strong_dissipation_drive();
    const auto amp = presets::entangled_probe();
    const auto scan = FrequencyGrid::make(0.0, 2.0, 0.05);
    const auto [l, r] = transmission_curve_pair(cfg, amp, presets::unit_noise(), 0.97, scan);
    CHECK(l == transmission_curve(cfg.with_chirality(Chirality::Left), amp, presets::unit_noise(), 0.97, scan));
    CHECK(r == transmission_curve(cfg, amp, presets::unit_noise(), 0.97, scan));
    CHECK(l.chirality == Chirality::Left);
    CHECK(r.chirality == Chirality::Right);
}

TEST_CASE("one zero coupling gives identical enantiomer curves") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> w(-0.5, 0.5);
    std::uniform_real_distribution<double> det(-2.0, 2.0);
    const auto scan = FrequencyGrid::make(0.0, 3.0, 0.1);
    for (int n = 0; n < 20; ++n) {
        DriveConfig cfg{w(rng), w(rng), w(rng), det(rng), det(rng)};
        (n % 3 == 0 ? cfg.omega21 : n % 3 == 1 ? cfg.omega31 : cfg.omega32) = 0.0;
        const auto amp = n % 2 ? presets::classical_probe() : BiphotonAmplitude::entangled(0.0, 0.0, 1.0, 4.0, 5.0);
        const auto [l, r] = transmission_curve_pair(cfg, amp, presets::unit_noise(), det(rng) / 2.0, scan);
        for (std::size_t i = 0; i < l.points.size(); ++i) CHECK(std::abs(l.points[i].value - r.points[i].value) <= 1e-12);
    }
}

TEST_CASE("undriven molecule: symmetric single feature") {
    const DriveConfig off{0.0, 0.0, 0.0};
    const auto scan = FrequencyGrid::make(0.0, 4.0, 0.01);
    const auto [l, r] = transmission_curve_pair(off, presets::classical_probe(), presets::unit_noise(), 0.0, scan);
    CHECK(l.values() == r.values());
    const std::size_t n = l.points.size();
    for (std::size_t i = 0; i < n / 2; ++i) CHECK(std::abs(l.points[i].value - l.points[n - 1 - i].value) < 1e-14);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(l.points[i].value) > std::abs(l.points[peak].value)) peak = i;
    CHECK(std::abs(l.points[peak].deltaSBar) < 1e-9);
}

TEST_CASE("far from the pair support the signal vanishes") {
    const auto d = dressed_states(presets::strong_dissipation_drive());
    const auto amp = presets::classical_probe();
    const auto grid = signal_quadrature_grid(amp, 1.0, 0.0);
    CHECK(std::abs(transmission_point(d, amp, presets::unit_noise(), {11.0, 0.0}, grid)) < 1e-12);
}

TEST_CASE("bilinear in the amplitude scale") {
    const auto d = dressed_states(presets::strong_dissipation_drive());
    auto amp = BiphotonAmplitude::entangled(0.0, 0.0, 1.0, 4.0, 5.0);
    const auto grid = signal_quadrature_grid(amp, 1.0, 0.3);
    const double base = transmission_point(d, amp, presets::unit_noise(), {0.2, 0.3}, grid);
    amp.scale = 3.0;
    const double scaled = transmission_point(d, amp, presets::unit_noise(), {0.2, 0.3}, grid);
    CHECK(scaled == doctest::Approx(9.0 * base).epsilon(1e-13));
}

TEST_CASE("halving the quadrature step converges") {
    const auto noise = presets::unit_noise();
    for (const auto& amp : {presets::classical_probe(), presets::entangled_probe()}) {
        const auto d = dressed_states(presets::strong_dissipation_drive());
        const double wl = 0.99;
        const auto g = signal_quadrature_grid(amp, 1.0, wl);
        const auto fine = FrequencyGrid::make(g.center(), g.half_width(), g.step() / 2.0);
        const TransmissionKernel a(d, amp, noise, wl, g);
        const TransmissionKernel b(d, amp, noise, wl, fine);
        double scale = 0.0;
        for (double ds = -3.0; ds <= 3.0; ds += 0.01) scale = std::max(scale, std::abs(a(ds)));
        for (double ds = -3.0; ds <= 3.0; ds += 0.01) CHECK(std::abs(a(ds) - b(ds)) < 1e-6 * scale);
    }
}

TEST_CASE("coarse quadrature is rejected") {
    const auto d = dressed_states(presets::strong_dissipation_drive());
    CHECK_THROWS_AS(transmission_point(d, presets::entangled_probe(), presets::unit_noise(), {0.0, 0.0},
                                       FrequencyGrid::make(0.0, 6.0, 0.05)),
                    GridTooCoarse);
}

TEST_CASE("zero bandwidth limit") {
    const NoiseParams noise{1.0};

    SUBCASE("resonant level, pinned on resonance") {
        const auto amp = BiphotonAmplitude::zero_bandwidth(0.0, {0.0, 1.0});
        CHECK(zero_bandwidth_pinned(single_level(0.0), amp, noise, 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("sign change one linewidth away") {
        const auto amp = BiphotonAmplitude::zero_bandwidth(1.3, {0.0, 1.0});
        CHECK(std::abs(zero_bandwidth_pinned(single_level(0.3), amp, noise, 0.0)) < 1e-15);
    }
    SUBCASE("opposite signs inside the window") {
        const auto amp = BiphotonAmplitude::zero_bandwidth(1.0, {0.0, 1.0});
        CHECK(zero_bandwidth_pinned(single_level(-0.2), amp, noise, 0.0) < 0.0);
        CHECK(zero_bandwidth_pinned(single_level(0.2), amp, noise, 0.0) > 0.0);
    }
    SUBCASE("off the pinned detuning nothing is recorded") {
        const auto amp = BiphotonAmplitude::zero_bandwidth(1.0, {0.0, 1.0});
        CHECK(zero_bandwidth_point(single_level(0.3), amp, noise, {0.5, 0.0}) == 0.0);
        CHECK(zero_bandwidth_point(single_level(0.3), amp, noise, {1.0, 0.0}) != 0.0);
    }
    SUBCASE("matches the closed form") {
        const auto amp = BiphotonAmplitude::zero_bandwidth(0.4, {0.1, 0.8});
        for (double wl : {-1.0, 0.0, 0.35, 2.0}) {
            const double dpl = 0.4 - wl;
            const double phi = std::exp(-(dpl - 0.1) * (dpl - 0.1) / (2.0 * 0.64));
            const double a = 0.25 - dpl;
            const double expected = phi * phi * (1.0 - a * a) / ((a * a + 1.0) * (a * a + 1.0));
            CHECK(zero_bandwidth_pinned(single_level(0.25), amp, noise, wl) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("wrong kind") {
        CHECK_THROWS_AS(zero_bandwidth_pinned(single_level(0.0), presets::classical_probe(), noise, 0.0), WrongKind);
    }
}
