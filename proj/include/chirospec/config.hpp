// config.hpp - experiment description for the command-line front end
//
// The on-disk format is a single YAML document; see README.md for the key
// reference. Couplings are always given for the right-handed molecule.

#pragma once

#include "chirospec/analysis.hpp"
#include "chirospec/biphoton.hpp"
#include "chirospec/model.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chirospec {

struct ScanSettings {
    double center{0.0};
    double halfWidth{6.0};
    double step{0.004};

    FrequencyGrid grid() const { return FrequencyGrid::make(center, halfWidth, step); }
    bool operator==(const ScanSettings&) const = default;
};

// Idler detector frequencies: an explicit list or an inclusive stepped range.
struct IdlerSpec {
    std::vector<double> list;  // used when !range
    bool range{false};
    double min{0.0};
    double max{0.0};
    double step{0.0};

    std::vector<double> values() const;
    bool operator==(const IdlerSpec&) const = default;
};

struct AxisSpec {
    double min{0.0};
    double max{0.0};
    std::size_t count{1};

    std::vector<double> values() const;
    bool operator==(const AxisSpec&) const = default;
};

struct SweepSpec {
    AxisSpec t0;
    AxisSpec omegaL;
    bool operator==(const SweepSpec&) const = default;
};

enum class CurveOutput { All, Distinguishable, None };

struct OutputSpec {
    std::string dir{"chirospec_out"};
    CurveOutput curves{CurveOutput::All};
    bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
    DriveConfig drive{};
    NoiseParams noise{};
    BiphotonAmplitude probe = BiphotonAmplitude::uncorrelated(0.0, 0.0, 1.0);
    ScanSettings scan{};
    std::optional<IdlerSpec> idler;
    std::optional<SweepSpec> sweep;
    AnalysisSettings analysis{};
    OutputSpec output{};

    bool operator==(const ExperimentConfig&) const = default;
};

// Throws ParseError (malformed document, unknown key, wrong type) or
// ValidationError (violated invariant).
ExperimentConfig parse_config(std::string_view text);

// Throws IoError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical YAML with every field spelled out; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace chirospec
