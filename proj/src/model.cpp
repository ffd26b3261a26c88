#include "chirospec/model.hpp"

#include "chirospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace chirospec {

double DriveConfig::max_coupling() const noexcept {
    return std::max({std::abs(omega21), std::abs(omega31), std::abs(omega32)});
}

void NoiseParams::validate() const {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw InvalidParameter("gamma > 0");
    }
}

double HermitianTriad::hermiticity_defect() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

HermitianTriad build_rotating_hamiltonian(const DriveConfig& cfg) {
    const cplx w21 = cfg.omega21;
    const cplx w31 = cfg.effective_omega31();
    const cplx w32 = cfg.omega32;

    HermitianTriad h;
    h.entries << 0.0, std::conj(w21), std::conj(w31),
                 w21, cfg.delta21,   std::conj(w32),
                 w31, w32,           cfg.delta31;
    return h;
}

namespace {

// Rotate the columns [first, first+count) of `vecs` (all sharing one eigenvalue)
// so that each carries the same overlap with |1>.
void even_split_block(Eigen::Matrix3cd& vecs, Eigen::Index first, Eigen::Index count) {
    const Eigen::MatrixXcd block = vecs.middleCols(first, count);
    const Eigen::VectorXcd proj = block * block.row(0).adjoint();  // P_block |1>
    const double norm = proj.norm();
    if (norm < 1e-14) return;

    std::vector<Eigen::Vector3cd> basis;
    basis.emplace_back(proj / norm);
    for (Eigen::Index j = 0; j < count && static_cast<Eigen::Index>(basis.size()) < count; ++j) {
        Eigen::Vector3cd v = block.col(j);
        for (const auto& b : basis) v -= b.dot(v) * b;
        const double n = v.norm();
        if (n > 1e-8) basis.emplace_back(v / n);
    }
    if (static_cast<Eigen::Index>(basis.size()) != count) return;

    // Discrete Fourier mix: every output vector gets <1|basis[0]>/sqrt(count).
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(count));
    for (Eigen::Index k = 0; k < count; ++k) {
        Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
        for (Eigen::Index j = 0; j < count; ++j) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                 static_cast<double>(count);
            v += std::polar(inv_sqrt, phase) * basis[static_cast<std::size_t>(j)];
        }
        vecs.col(first + k) = v;
    }
}

void fix_gauge(Eigen::Matrix3cd& vecs) {
    for (Eigen::Index c = 0; c < 3; ++c) {
        Eigen::Index best = 0;
        double best_mag = std::abs(vecs(0, c));
        for (Eigen::Index r = 1; r < 3; ++r) {
            const double mag = std::abs(vecs(r, c));
            if (mag > best_mag * (1.0 + 1e-12) + 1e-15) {
                best = r;
                best_mag = mag;
            }
        }
        if (best_mag == 0.0) continue;
        const cplx phase = vecs(best, c) / best_mag;
        vecs.col(c) *= std::conj(phase);
        vecs(best, c) = best_mag;
    }
}

}  // namespace

DressedTriad dressed_states(const HermitianTriad& h, Chirality chirality) {
    if (!h.entries.allFinite()) {
        throw NonHermitianInput("dressed_states: Hamiltonian has non-finite entries");
    }
    const double defect = h.hermiticity_defect();
    if (defect > HermitianTriad::kTolerance) {
        throw NonHermitianInput("dressed_states: |H - H^dagger|_max = " + std::to_string(defect));
    }

    const Eigen::Matrix3cd sym = 0.5 * (h.entries + h.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NonFiniteResult("dressed_states: eigendecomposition failed");
    }

    DressedTriad out;
    out.chirality = chirality;
    out.vectors = solver.eigenvectors();
    const Eigen::Vector3d& evals = solver.eigenvalues();
    for (int i = 0; i < 3; ++i) out.lambdas[static_cast<std::size_t>(i)] = evals(i);

    const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= 3; ++i) {
        const bool split = (i == 3) || (evals(i) - evals(i - 1) > kDegeneracyTolerance * scale);
        if (split) {
            if (i - start > 1) even_split_block(out.vectors, start, i - start);
            start = i;
        }
    }

    fix_gauge(out.vectors);
    for (int i = 0; i < 3; ++i) out.eta1[static_cast<std::size_t>(i)] = out.vectors(0, i);
    return out;
}

std::array<double, 3> DressedTriad::weights() const noexcept {
    return {std::norm(eta1[0]), std::norm(eta1[1]), std::norm(eta1[2])};
}

std::size_t DressedTriad::dominant_index() const noexcept {
    const auto w = weights();
    const double top = *std::max_element(w.begin(), w.end());
    for (std::size_t i = 0; i < 3; ++i) {
        if (w[i] >= top - 1e-12) return i;
    }
    return 0;
}

CharacteristicInvariants characteristic_invariants(const HermitianTriad& h) {
    const auto& m = h.entries;
    const cplx minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
                      + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)
                      + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    return {m.trace().real(), minors.real(), m.determinant().real()};
}

double perturbative_lambda1(const DriveConfig& cfg, double big_detuning) {
    const double max_w = cfg.max_coupling();
    if (!(big_detuning > 0.0) || big_detuning < 10.0 * max_w) {
        throw DetuningTooSmall("perturbative_lambda1: need detuning >= 10 max|Omega| (got " +
                               std::to_string(big_detuning) + ")");
    }
    const cplx w21 = cfg.omega21;
    const cplx w31 = cfg.effective_omega31();
    const cplx w32 = cfg.omega32;
    const double d = big_detuning;

    const double second = -(std::norm(w21) + std::norm(w31)) / d;
    const double third = 2.0 * (std::conj(w21) * std::conj(w32) * w31).real() / (d * d);
    return second + third;
}

}  // namespace chirospec
