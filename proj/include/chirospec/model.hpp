// model.hpp - rotating-frame Hamiltonian of the driven cyclic triad and its dressed states
//
// Basis ordering is (|1>, |2>, |3>). Energies are detunings in units of the
// dissipation rate Gamma. The stored omega31 is always the right-handed value;
// the left-handed molecule differs only by the sign of that coupling.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string_view>

namespace chirospec {

using cplx = std::complex<double>;

enum class Chirality { Left, Right };

constexpr Chirality mirror(Chirality c) noexcept {
    return c == Chirality::Left ? Chirality::Right : Chirality::Left;
}

constexpr std::string_view to_string(Chirality c) noexcept {
    return c == Chirality::Left ? "L" : "R";
}

struct DriveConfig {
    cplx omega21{0.1};
    cplx omega31{0.1};  // right-handed value
    cplx omega32{0.1};
    double delta21{0.0};
    double delta31{0.0};
    Chirality chirality{Chirality::Right};

    // Fixed by three-photon resonance v31 = v21 + v32.
    double delta32() const noexcept { return delta31 - delta21; }

    // Coupling of |1> <-> |3> with the handedness applied.
    cplx effective_omega31() const noexcept {
        return chirality == Chirality::Right ? omega31 : -omega31;
    }

    DriveConfig with_chirality(Chirality c) const noexcept {
        DriveConfig out = *this;
        out.chirality = c;
        return out;
    }

    double max_coupling() const noexcept;

    bool operator==(const DriveConfig&) const = default;
};

struct NoiseParams {
    double gamma{1.0};

    // Throws InvalidParameter unless gamma is finite and > 0.
    void validate() const;

    bool operator==(const NoiseParams&) const = default;
};

struct HermitianTriad {
    Eigen::Matrix3cd entries;

    // max |H - H^dagger|
    double hermiticity_defect() const;
    static constexpr double kTolerance = 1e-12;
};

struct DressedTriad {
    std::array<double, 3> lambdas{};  // ascending
    std::array<cplx, 3> eta1{};       // <1|lambda_i>
    Eigen::Matrix3cd vectors;         // columns are the dressed states
    Chirality chirality{Chirality::Right};

    // |eta1_i|^2. Degenerate blocks share the projection of |1> evenly.
    std::array<double, 3> weights() const noexcept;

    // Index of the state carrying the largest |eta1|^2; ties resolve to the
    // lowest eigenvalue.
    std::size_t dominant_index() const noexcept;
};

struct CharacteristicInvariants {
    double trace{0.0};
    double pairSum{0.0};
    double det{0.0};
};

HermitianTriad build_rotating_hamiltonian(const DriveConfig& cfg);

// Eigenvalues closer than this (relative to the matrix scale) form one block.
inline constexpr double kDegeneracyTolerance = 1e-9;

DressedTriad dressed_states(const HermitianTriad& h, Chirality chirality);

inline DressedTriad dressed_states(const DriveConfig& cfg) {
    return dressed_states(build_rotating_hamiltonian(cfg), cfg.chirality);
}

CharacteristicInvariants characteristic_invariants(const HermitianTriad& h);

// Third-order stationary perturbation estimate of the dressed level adiabatically
// connected to |1> when both |2> and |3> are detuned by big_detuning:
//   lambda1 = -(|W21|^2 + |W31|^2)/D + 2 Re(W21* W32* W31)/D^2
// with W31 the chirality-resolved coupling. Error is O(max|W|^4 / D^3).
double perturbative_lambda1(const DriveConfig& cfg, double big_detuning);

}  // namespace chirospec
