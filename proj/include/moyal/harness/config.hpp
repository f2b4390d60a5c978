#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "moyal/numerics/grid.hpp"

namespace moyal::harness {

// Usage and config problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment = "all";
    int d = 2;
    double theta0 = 2.0;
    double grid_L = 12.0;
    int grid_n = 48;
    numerics::GridScheme grid_scheme = numerics::GridScheme::MidpointUniform;
    std::vector<double> refine_L{8.0, 12.0, 16.0};
    int basis_M = 8;
    double basis_L = 8.0;
    int basis_n = 48;
    int sphere_nodes = 64;
    double window_lo = 0.005;
    double window_hi = 0.04;
    std::vector<double> stencil{0.4, 0.2, 0.1, 0.05};
    std::uint64_t seed = 20240917;
    std::string out = "moyal-out";
    long wi_N = 1000000;
    int sandwich_count = 50;
    int pairs = 5;
};

const std::vector<std::string>& experiment_names();

// Flat "key = value" text, '#' starts a comment. Unknown keys, duplicate keys
// and out-of-range values throw ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& cfg);

// Canonical text of every field that can change a computed number (out is excluded).
std::string canonical_text(const ExperimentConfig& cfg);
// FNV-1a 64 of canonical_text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace moyal::harness
