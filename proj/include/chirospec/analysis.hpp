// analysis.hpp - enantiomer distinguishability: line-shape signatures,
// discrimination metrics, analytic sign windows and (T0, omega_l) regime maps.

#pragma once

#include "chirospec/spectrum.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chirospec {

// Signs of the significant lobes of a curve (peaks above zero, troughs below
// zero) in scan order. The null signature (no lobes, dominantSign 0) marks a
// flat curve.
struct LineShapeSignature {
    std::vector<int> extremaSigns;
    int zeroCrossings{0};
    int dominantSign{0};

    bool is_null() const noexcept { return extremaSigns.empty(); }

    // e.g. "+-:1:+", "null" for flat curves
    std::string str() const;

    auto operator<=>(const LineShapeSignature&) const = default;
};

struct AnalysisSettings {
    double extremumThreshold{0.05};  // lobe significance, fraction of max |P|
    double metricThreshold{0.2};     // discriminability cut
    double flatThreshold{1e-14};     // below this max |P| a curve is flat

    bool operator==(const AnalysisSettings&) const = default;
};

inline constexpr std::size_t kMinCurvePoints = 16;

LineShapeSignature classify_lineshape(const SpectrumCurve& curve, double rel_threshold = 0.05,
                                      double flat_threshold = 1e-14);

struct Discrimination {
    double metric{0.0};  // in [0, 1]
    bool distinguishable{false};
    LineShapeSignature left;
    LineShapeSignature right;
};

// metric = min(1, |P_L - P_R|_2 / max(|P_L|_2, |P_R|_2)); distinguishable when
// the signatures differ or metric >= settings.metricThreshold.
Discrimination discriminability(const SpectrumCurve& left, const SpectrumCurve& right,
                                const AnalysisSettings& settings = {});

struct Interval {
    double lo{0.0};
    double hi{0.0};
    double length() const noexcept { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

// Open intervals of pinned detuning where the zero-bandwidth spectra of the two
// enantiomers carry opposite signs.
struct DiscriminationWindow {
    std::vector<Interval> intervals;  // disjoint, sorted

    bool empty() const noexcept { return intervals.empty(); }
    double measure() const noexcept;
    bool contains(double delta) const noexcept;
    bool operator==(const DiscriminationWindow&) const = default;
};

// Symmetric difference of (lambdaL - gamma, lambdaL + gamma) and
// (lambdaR - gamma, lambdaR + gamma), endpoints excluded.
DiscriminationWindow discrimination_window(double lambda_left, double lambda_right, double gamma);

// One (L, R) comparison per idler frequency, evaluated in parallel.
std::vector<Discrimination> idler_scan(const DriveConfig& cfg, const BiphotonAmplitude& amp,
                                       const NoiseParams& noise, std::span<const double> omega_l_bars,
                                       const FrequencyGrid& scan, const AnalysisSettings& settings,
                                       unsigned threads);

using SignaturePair = std::pair<LineShapeSignature, LineShapeSignature>;

struct RegimeMap {
    std::vector<double> t0Axis;
    std::vector<double> omegaLAxis;
    std::vector<int> labels;            // row-major, rows follow t0Axis; 0 = indistinguishable
    std::vector<double> metrics;        // same layout
    std::vector<SignaturePair> legend;  // legend[k] describes label k + 1

    std::size_t rows() const noexcept { return t0Axis.size(); }
    std::size_t cols() const noexcept { return omegaLAxis.size(); }
    int label(std::size_t row, std::size_t col) const { return labels[row * cols() + col]; }
    std::size_t distinct_nonzero_labels() const noexcept { return legend.size(); }

    bool operator==(const RegimeMap&) const = default;
};

// Crystal delays used for a regime-map row.
inline constexpr double kSignalDelayFactor = 2.4;
inline constexpr double kIdlerDelayFactor = 2.5;

// Sweep (T0, omega_l_bar) with tS = 2.4 T0 and tL = 2.5 T0 on an EntangledSpdc
// template. Cells are computed in parallel; labels are interned afterwards in
// row-major first-encounter order.
RegimeMap regime_map(const DriveConfig& cfg, const BiphotonAmplitude& amp_template,
                     const NoiseParams& noise, std::span<const double> t0_grid,
                     std::span<const double> omega_l_grid, const FrequencyGrid& scan,
                     const AnalysisSettings& settings = {}, unsigned threads = 1);

struct LabelRegion {
    int label{0};
    std::size_t cells{0};
};

// 4-connected components of equal nonzero labels, in row-major discovery order.
std::vector<LabelRegion> label_regions(const RegimeMap& map);

}  // namespace chirospec
