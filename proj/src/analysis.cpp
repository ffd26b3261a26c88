#include "chirospec/analysis.hpp"

#include "chirospec/errors.hpp"
#include "chirospec/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace chirospec {

std::string LineShapeSignature::str() const {
    if (is_null()) return "null";
    std::string s;
    for (int sign : extremaSigns) s += sign > 0 ? '+' : '-';
    s += ':' + std::to_string(zeroCrossings) + ':';
    s += dominantSign > 0 ? '+' : '-';
    return s;
}

LineShapeSignature classify_lineshape(const SpectrumCurve& curve, double rel_threshold,
                                      double flat_threshold) {
    const std::size_t n = curve.points.size();
    if (n < kMinCurvePoints) {
        throw CurveTooShort("classify_lineshape: need at least " + std::to_string(kMinCurvePoints) +
                            " points, got " + std::to_string(n));
    }

    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(curve.points[i].value) > std::abs(curve.points[peak].value)) peak = i;
    }
    const double max_abs = std::abs(curve.points[peak].value);
    LineShapeSignature sig;
    if (!(max_abs >= flat_threshold)) return sig;

    const double threshold = rel_threshold * max_abs;
    auto v = [&](std::size_t i) { return curve.points[i].value; };
    for (std::size_t i = 0; i < n; ++i) {
        const double x = v(i);
        if (std::abs(x) < threshold) continue;
        // Plateaus report their right-most point once.
        const bool up_from_left = i == 0 || x >= v(i - 1);
        const bool down_from_left = i == 0 || x <= v(i - 1);
        const bool is_peak = x > 0.0 && up_from_left && (i + 1 == n || x > v(i + 1)) &&
                             (i != 0 || x > v(1));
        const bool is_trough = x < 0.0 && down_from_left && (i + 1 == n || x < v(i + 1)) &&
                               (i != 0 || x < v(1));
        if (is_peak) sig.extremaSigns.push_back(1);
        if (is_trough) sig.extremaSigns.push_back(-1);
    }
    for (std::size_t i = 1; i < sig.extremaSigns.size(); ++i) {
        if (sig.extremaSigns[i] != sig.extremaSigns[i - 1]) ++sig.zeroCrossings;
    }
    sig.dominantSign = v(peak) > 0.0 ? 1 : -1;
    return sig;
}

Discrimination discriminability(const SpectrumCurve& left, const SpectrumCurve& right,
                                const AnalysisSettings& settings) {
    if (left.points.size() != right.points.size()) {
        throw GridMismatch("discriminability: curves have different lengths");
    }
    double diff2 = 0.0;
    double left2 = 0.0;
    double right2 = 0.0;
    for (std::size_t i = 0; i < left.points.size(); ++i) {
        if (left.points[i].deltaSBar != right.points[i].deltaSBar) {
            throw GridMismatch("discriminability: curves use different scan grids");
        }
        const double a = left.points[i].value;
        const double b = right.points[i].value;
        diff2 += (a - b) * (a - b);
        left2 += a * a;
        right2 += b * b;
    }

    Discrimination d;
    const double denom = std::sqrt(std::max(left2, right2));
    d.metric = denom > 0.0 ? std::min(1.0, std::sqrt(diff2) / denom) : 0.0;
    d.left = classify_lineshape(left, settings.extremumThreshold, settings.flatThreshold);
    d.right = classify_lineshape(right, settings.extremumThreshold, settings.flatThreshold);
    d.distinguishable = (d.left != d.right) || d.metric >= settings.metricThreshold;
    return d;
}

double DiscriminationWindow::measure() const noexcept {
    double m = 0.0;
    for (const auto& iv : intervals) m += iv.length();
    return m;
}

bool DiscriminationWindow::contains(double delta) const noexcept {
    return std::any_of(intervals.begin(), intervals.end(),
                       [delta](const Interval& iv) { return delta > iv.lo && delta < iv.hi; });
}

DiscriminationWindow discrimination_window(double lambda_left, double lambda_right, double gamma) {
    if (!(gamma > 0.0)) throw InvalidParameter("gamma > 0");
    DiscriminationWindow w;
    if (lambda_left == lambda_right) return w;

    const double lo = std::min(lambda_left, lambda_right);
    const double hi = std::max(lambda_left, lambda_right);
    const Interval a{lo - gamma, lo + gamma};
    const Interval b{hi - gamma, hi + gamma};

    // a \ b lies left of b, b \ a lies right of a.
    w.intervals.push_back({a.lo, std::min(a.hi, b.lo)});
    w.intervals.push_back({std::max(a.hi, b.lo), b.hi});
    return w;
}

std::vector<Discrimination> idler_scan(const DriveConfig& cfg, const BiphotonAmplitude& amp,
                                       const NoiseParams& noise, std::span<const double> omega_l_bars,
                                       const FrequencyGrid& scan, const AnalysisSettings& settings,
                                       unsigned threads) {
    std::vector<Discrimination> out(omega_l_bars.size());
    parallel_for(omega_l_bars.size(), threads, [&](std::size_t i) {
        const auto [left, right] = transmission_curve_pair(cfg, amp, noise, omega_l_bars[i], scan);
        out[i] = discriminability(left, right, settings);
    });
    return out;
}

RegimeMap regime_map(const DriveConfig& cfg, const BiphotonAmplitude& amp_template,
                     const NoiseParams& noise, std::span<const double> t0_grid,
                     std::span<const double> omega_l_grid, const FrequencyGrid& scan,
                     const AnalysisSettings& settings, unsigned threads) {
    if (amp_template.kind != JsaKind::EntangledSpdc) {
        throw InvalidParameter("regime_map: probe must be an entangled SPDC amplitude");
    }
    if (t0_grid.empty() || omega_l_grid.empty()) {
        throw InvalidParameter("regime_map: empty sweep axis");
    }
    for (double t0 : t0_grid) {
        if (!std::isfinite(t0) || t0 < 0.0) throw InvalidParameter("regime_map: T0 >= 0");
    }

    RegimeMap map;
    map.t0Axis.assign(t0_grid.begin(), t0_grid.end());
    map.omegaLAxis.assign(omega_l_grid.begin(), omega_l_grid.end());

    const std::size_t cols = omega_l_grid.size();
    const std::size_t cells = t0_grid.size() * cols;
    std::vector<Discrimination> results(cells);
    parallel_for(cells, threads, [&](std::size_t idx) {
        BiphotonAmplitude amp = amp_template;
        const double t0 = t0_grid[idx / cols];
        amp.tS = kSignalDelayFactor * t0;
        amp.tL = kIdlerDelayFactor * t0;
        const auto [left, right] = transmission_curve_pair(cfg, amp, noise, omega_l_grid[idx % cols], scan);
        results[idx] = discriminability(left, right, settings);
    });

    // Sequential interning keeps label ids independent of the schedule.
    std::map<SignaturePair, int> ids;
    map.labels.resize(cells, 0);
    map.metrics.resize(cells, 0.0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const auto& r = results[idx];
        map.metrics[idx] = r.metric;
        if (!r.distinguishable) continue;
        SignaturePair key{r.left, r.right};
        auto [it, inserted] = ids.try_emplace(key, static_cast<int>(map.legend.size()) + 1);
        if (inserted) map.legend.push_back(std::move(key));
        map.labels[idx] = it->second;
    }
    return map;
}

std::vector<LabelRegion> label_regions(const RegimeMap& map) {
    const std::size_t rows = map.rows();
    const std::size_t cols = map.cols();
    std::vector<bool> seen(rows * cols, false);
    std::vector<LabelRegion> regions;

    for (std::size_t start = 0; start < rows * cols; ++start) {
        const int label = map.labels[start];
        if (label == 0 || seen[start]) continue;
        LabelRegion region{label, 0};
        std::queue<std::size_t> todo;
        todo.push(start);
        seen[start] = true;
        while (!todo.empty()) {
            const std::size_t idx = todo.front();
            todo.pop();
            ++region.cells;
            const std::size_t r = idx / cols;
            const std::size_t c = idx % cols;
            auto visit = [&](std::size_t other) {
                if (!seen[other] && map.labels[other] == label) {
                    seen[other] = true;
                    todo.push(other);
                }
            };
            if (r > 0) visit(idx - cols);
            if (r + 1 < rows) visit(idx + cols);
            if (c > 0) visit(idx - 1);
            if (c + 1 < cols) visit(idx + 1);
        }
        regions.push_back(region);
    }
    return regions;
}

}  // namespace chirospec
