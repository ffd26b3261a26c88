// commands.hpp - orchestration behind the chirospec executable

#pragma once

#include "chirospec/config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace chirospec {

inline constexpr std::string_view kVersion = "0.3.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitUnexpected = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitNumerical = 4,
};

// "%.9e"
std::string format_number(double v);

std::uint32_t crc32(std::string_view bytes);

struct OutputFile {
    std::string name;  // relative to the run directory, '/' separated
    std::string content;
};

// Files are produced in memory first, then written by write_outputs in order.
struct RunOutput {
    std::vector<OutputFile> files;
    std::size_t distinctSignaturePairs{0};
    std::size_t distinguishableCount{0};
};

RunOutput spectrum_outputs(const ExperimentConfig& cfg, unsigned threads);
RunOutput regime_map_outputs(const ExperimentConfig& cfg, unsigned threads);

// Writes every file plus run_record.txt (version, wall time, checksums). Throws IoError.
void write_outputs(const std::filesystem::path& dir, const RunOutput& run, double wall_seconds);

void print_dressed_report(const ExperimentConfig& cfg, std::ostream& out);

// Full command line handling; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chirospec
