#include "chirospec/errors.hpp"
#include "chirospec/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace chirospec;

namespace {

DriveConfig resonant(Chirality c) { return DriveConfig{0.1, 0.1, 0.1, 0.0, 0.0, c}; }

double residual(const HermitianTriad& h, const DressedTriad& d, int i) {
    const Eigen::Vector3cd v = d.vectors.col(i);
    return (h.entries * v - d.lambdas[static_cast<std::size_t>(i)] * v).norm();
}

DriveConfig random_drive(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    DriveConfig c{cplx(w(rng), w(rng)), cplx(w(rng), w(rng)), cplx(w(rng), w(rng)), d(rng), d(rng)};
    return c;
}

}  // namespace

TEST_CASE("chirality mirror is an involution") {
    CHECK(mirror(mirror(Chirality::Left)) == Chirality::Left);
    CHECK(mirror(Chirality::Right) == Chirality::Left);
    CHECK(to_string(Chirality::Left) == "L");
}

TEST_CASE("rotating hamiltonian layout") {
    SUBCASE("no drive is diagonal") {
        const auto h = build_rotating_hamiltonian(DriveConfig{0.0, 0.0, 0.0, 2.0, 5.0});
        Eigen::Matrix3cd expected = Eigen::Matrix3cd::Zero();
        expected.diagonal() << 0.0, 2.0, 5.0;
        CHECK((h.entries - expected).norm() == 0.0);
    }
    SUBCASE("right handed resonant") {
        const auto h = build_rotating_hamiltonian(resonant(Chirality::Right));
        CHECK(h.entries.diagonal().norm() == 0.0);
        CHECK(h.entries(1, 0) == cplx(0.1));
        CHECK(h.entries(2, 0) == cplx(0.1));
        CHECK(h.entries(2, 1) == cplx(0.1));
    }
    SUBCASE("left handed flips the 1-3 coupling only") {
        const auto h = build_rotating_hamiltonian(resonant(Chirality::Left));
        CHECK(h.entries(1, 0) == cplx(0.1));
        CHECK(h.entries(2, 0) == cplx(-0.1));
        CHECK(h.entries(0, 2) == cplx(-0.1));
        CHECK(h.entries(2, 1) == cplx(0.1));
    }
    SUBCASE("third detuning follows from the other two") {
        DriveConfig c;
        c.delta21 = 1.5;
        c.delta31 = 4.0;
        CHECK(c.delta32() == doctest::Approx(2.5));
    }
}

TEST_CASE("hamiltonian is hermitian for random complex drives") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 500; ++n) {
        auto cfg = random_drive(rng);
        cfg.chirality = n % 2 ? Chirality::Left : Chirality::Right;
        CHECK(build_rotating_hamiltonian(cfg).hermiticity_defect() <= HermitianTriad::kTolerance);
    }
}

TEST_CASE("resonant dressed states against the cubic oracle") {
    for (auto c : {Chirality::Right, Chirality::Left}) {
        const auto cfg = resonant(c);
        const auto d = dressed_states(cfg);
        const auto roots = oracle::cubic_roots(
            oracle::coefficients(oracle::triad(0.1, cfg.effective_omega31(), 0.1, 0.0, 0.0)));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(d.lambdas[i] - roots[i]) < 1e-12);
    }
    const auto r = dressed_states(resonant(Chirality::Right));
    CHECK(std::abs(r.lambdas[0] + 0.1) < 1e-12);
    CHECK(std::abs(r.lambdas[1] + 0.1) < 1e-12);
    CHECK(std::abs(r.lambdas[2] - 0.2) < 1e-12);
    const auto w = r.weights();
    CHECK(std::abs(w[0] + w[1] - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(w[2] - 1.0 / 3.0) < 1e-12);
    // even split inside the degenerate block
    CHECK(std::abs(w[0] - w[1]) < 1e-12);

    const auto l = dressed_states(resonant(Chirality::Left));
    CHECK(std::abs(l.lambdas[0] + 0.2) < 1e-12);
    CHECK(std::abs(l.lambdas[1] - 0.1) < 1e-12);
    CHECK(std::abs(l.lambdas[2] - 0.1) < 1e-12);
}

TEST_CASE("no drive dressed states") {
    const auto d = dressed_states(DriveConfig{0.0, 0.0, 0.0, 2.0, 5.0});
    CHECK(d.lambdas == std::array<double, 3>{0.0, 2.0, 5.0});
    CHECK(d.eta1[0] == cplx(1.0));
    CHECK(d.eta1[1] == cplx(0.0));
    CHECK(d.eta1[2] == cplx(0.0));
}

TEST_CASE("dressed state invariants on random hermitian inputs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n < 300; ++n) {
        HermitianTriad h;
        Eigen::Matrix3cd a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = cplx(u(rng), u(rng));
        h.entries = a + a.adjoint();
        const auto d = dressed_states(h, Chirality::Right);
        double total = 0.0;
        for (double w : d.weights()) total += w;
        CHECK(std::abs(total - 1.0) < 1e-10);
        CHECK(std::abs(d.lambdas[0] + d.lambdas[1] + d.lambdas[2] - h.entries.trace().real()) < 1e-10);
        CHECK(d.lambdas[0] <= d.lambdas[1]);
        CHECK(d.lambdas[1] <= d.lambdas[2]);
        const auto roots = oracle::cubic_roots(oracle::coefficients(
            {{{h.entries(0, 0), h.entries(0, 1), h.entries(0, 2)},
              {h.entries(1, 0), h.entries(1, 1), h.entries(1, 2)},
              {h.entries(2, 0), h.entries(2, 1), h.entries(2, 2)}}}));
        for (int i = 0; i < 3; ++i) {
            CHECK(residual(h, d, i) < 1e-10);
            CHECK(std::abs(d.lambdas[i] - roots[i]) < 1e-8);
            // gauge: largest component real and positive
            Eigen::Index r;
            d.vectors.col(i).cwiseAbs().maxCoeff(&r);
            CHECK(d.vectors(r, i).imag() == 0.0);
            CHECK(d.vectors(r, i).real() > 0.0);
        }
    }
}

TEST_CASE("degenerate blocks carry equal weights") {
    // |1> couples to a triply degenerate-free pair: H = diag(0, 1, 1) with equal couplings
    const auto d = dressed_states(DriveConfig{0.0, 0.0, 0.0, 1.0, 1.0});
    CHECK(d.weights()[0] == doctest::Approx(1.0));
    const auto d2 = dressed_states(DriveConfig{0.0, 0.0, 0.0, 0.0, 0.0});
    for (double w : d2.weights()) CHECK(std::abs(w - 1.0 / 3.0) < 1e-12);
    CHECK(d2.dominant_index() == 0);
}

TEST_CASE("non hermitian input is rejected") {
    HermitianTriad h;
    h.entries = Eigen::Matrix3cd::Zero();
    h.entries(0, 1) = 1.0;
    CHECK_THROWS_AS(dressed_states(h, Chirality::Right), NonHermitianInput);
}

TEST_CASE("characteristic invariants") {
    const auto r = characteristic_invariants(build_rotating_hamiltonian(resonant(Chirality::Right)));
    CHECK(std::abs(r.trace) < 1e-15);
    CHECK(std::abs(r.pairSum + 0.03) < 1e-15);
    CHECK(std::abs(r.det - 0.002) < 1e-15);
    const auto l = characteristic_invariants(build_rotating_hamiltonian(resonant(Chirality::Left)));
    CHECK(std::abs(l.det + 0.002) < 1e-15);
    const auto z = characteristic_invariants(build_rotating_hamiltonian(DriveConfig{0.0, 0.0, 0.0, 2.0, 5.0}));
    CHECK(z.trace == 7.0);
    CHECK(z.pairSum == 10.0);
    CHECK(z.det == 0.0);
}

TEST_CASE("trace and pair sum are chirality independent") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 300; ++n) {
        auto cfg = random_drive(rng);
        const auto r = characteristic_invariants(build_rotating_hamiltonian(cfg.with_chirality(Chirality::Right)));
        const auto l = characteristic_invariants(build_rotating_hamiltonian(cfg.with_chirality(Chirality::Left)));
        CHECK(std::abs(r.trace - l.trace) < 1e-12);
        CHECK(std::abs(r.pairSum - l.pairSum) < 1e-12);
        // real couplings on resonance: det flips sign
        DriveConfig real{cfg.omega21.real(), cfg.omega31.real(), cfg.omega32.real()};
        const auto rr = characteristic_invariants(build_rotating_hamiltonian(real.with_chirality(Chirality::Right)));
        const auto rl = characteristic_invariants(build_rotating_hamiltonian(real.with_chirality(Chirality::Left)));
        CHECK(std::abs(rr.det + rl.det) < 1e-12);
    }
}

TEST_CASE("one zero coupling makes the enantiomers isospectral") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 300; ++n) {
        auto cfg = random_drive(rng);
        (n % 3 == 0 ? cfg.omega21 : n % 3 == 1 ? cfg.omega31 : cfg.omega32) = 0.0;
        const auto r = dressed_states(cfg.with_chirality(Chirality::Right));
        const auto l = dressed_states(cfg.with_chirality(Chirality::Left));
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(r.lambdas[i] - l.lambdas[i]) < 1e-12);
            CHECK(std::abs(r.weights()[i] - l.weights()[i]) < 1e-10);
        }
    }
}

TEST_CASE("perturbative lambda1") {
    SUBCASE("zero drive") { CHECK(perturbative_lambda1(DriveConfig{0.0, 0.0, 0.0, 10.0, 10.0}, 10.0) == 0.0); }

    SUBCASE("small detuning rejected") {
        CHECK_THROWS_AS(perturbative_lambda1(DriveConfig{0.1, 0.1, 0.1, 0.5, 0.5}, 0.5), DetuningTooSmall);
        CHECK_THROWS_AS(perturbative_lambda1(DriveConfig{}, 0.0), DetuningTooSmall);
    }

    SUBCASE("matches the exact level near zero at D = 10") {
        DriveConfig cfg{0.1, 0.1, 0.1, 10.0, 10.0};
        const double pr = perturbative_lambda1(cfg, 10.0);
        const double pl = perturbative_lambda1(cfg.with_chirality(Chirality::Left), 10.0);
        CHECK(std::abs(std::abs(pr - pl) - 4e-5) < 1e-12);
        for (auto c : {Chirality::Right, Chirality::Left}) {
            const auto d = dressed_states(cfg.with_chirality(c));
            CHECK(std::abs(perturbative_lambda1(cfg.with_chirality(c), 10.0) - d.lambdas[0]) < 1e-5);
        }
    }

    SUBCASE("error scales as W^4 / D^3") {
        // fitted constant stays bounded across D
        double c_max = 0.0;
        for (double w : {0.1, 0.3}) {
            for (double d : {10.0, 30.0, 100.0}) {
                if (d < 10.0 * w) continue;
                for (auto c : {Chirality::Right, Chirality::Left}) {
                    DriveConfig cfg{w, w, w, d, d, c};
                    const double exact = dressed_states(cfg).lambdas[0];
                    const double err = std::abs(perturbative_lambda1(cfg, d) - exact);
                    c_max = std::max(c_max, err * d * d * d / std::pow(w, 4));
                }
            }
        }
        CHECK(c_max < 5.0);
        CHECK(c_max > 0.0);
    }

    SUBCASE("zero 1-3 coupling is chirality blind") {
        DriveConfig cfg{0.1, 0.0, 0.1, 10.0, 10.0};
        CHECK(perturbative_lambda1(cfg, 10.0) == perturbative_lambda1(cfg.with_chirality(Chirality::Left), 10.0));
    }
}
