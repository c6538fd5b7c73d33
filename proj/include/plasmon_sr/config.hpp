// JSON sweep configuration: strict schema, grid expansion and per-mode defaults.
//
// A grid entry is either an explicit list of numbers or a range object:
//   {"start": a, "stop": b, "step": s}                     linear, s > 0, stop inclusive
//   {"start": a, "stop": b, "count": n}                    n evenly spaced points
//   {"start": a, "stop": b, "count": n, "spacing": "log"}  n log-spaced points, a, b > 0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plasmon_sr/moments.hpp"
#include "plasmon_sr/nearfield.hpp"

namespace plasmon_sr {

enum class Mode { Steady, Dynamics, OracleCompare, FieldMap, Figure2, Figure3, Figure4 };

const char* mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& name);

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

struct SweepConfig {
    Mode mode = Mode::Steady;
    std::map<std::string, std::vector<double>> grids;
    std::optional<std::string> output;
    int workers = 1;

    double regime_threshold = 10.0;

    // dynamics
    double tolerance = 1e-9;
    double horizon = 50.0;
    int samples = 100;
    MomentState initial;

    // oracle-compare
    int fock_cutoff = 4;

    // field-map
    std::optional<NanorodSpec> nanorod;
    double emitter_dipole = 1.0;

    bool has_grid(const std::string& key) const { return grids.count(key) != 0; }
    /// Throws std::out_of_range for a missing grid.
    const std::vector<double>& grid(const std::string& key) const;
};

/// Built-in defaults; figure modes come fully populated.
SweepConfig default_config(Mode mode);

/// Parses and validates a config document. `mode_hint` (from the CLI
/// subcommand) must agree with a "mode" key when both are given.
SweepConfig parse_config(const std::string& text, std::optional<Mode> mode_hint = std::nullopt);
SweepConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode_hint = std::nullopt);

/// Mode-specific checks (required grids present, value domains). Throws ConfigError.
void validate(const SweepConfig& config);

}  // namespace plasmon_sr
