#pragma once

// Run configuration shared by the config-file reader and command-line flags.
// Everything is a key=value setting; presets expand to a block of settings.
//
// Precedence: preset < config file < flags.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dwell/models.hpp"
#include "dwell/oracle.hpp"
#include "dwell/rootfind.hpp"
#include "dwell/sweep.hpp"

namespace dwell {

// Parse or validation failure; line is 0 when not tied to a file line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct RunConfig {
    std::optional<ModelKind> model;
    std::optional<double> v0, a, b, c, hw1, hw2;
    double u = 1.0;

    std::optional<double> lambda_min, lambda_max;
    int steps = 200;
    int levels = 4;

    std::optional<int> coarse_steps, max_depth;
    std::optional<double> tol_abs;

    std::optional<int> n_points;
    bool richardson = true;
    std::optional<double> margin;

    std::optional<double> tolerance;
    std::optional<double> gap_ceiling;
    double depth_ratio = 0.5;

    std::string out;  // empty: stdout
    std::string svg;
    bool effective = false;
    unsigned threads = 0;
};

// Names accepted by `--preset` / `preset=`.
const std::vector<std::string_view>& preset_names();

// Applies one setting; throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

void apply_preset(RunConfig& cfg, std::string_view name);

// Reads `key=value` lines (`#` starts a comment) into cfg.
void parse_config(std::string_view text, RunConfig& cfg);
RunConfig parse_config(std::string_view text);

// Fully validated objects derived from a RunConfig.
struct ResolvedRun {
    ModelParams model;
    UnitsConfig units;
    SweepSpec sweep;
    RootfindConfig rootfind;
    OracleConfig oracle;
    CrossingCriteria criteria;
    double tolerance = 0.0;
    int levels = 0;
};

// Throws ConfigError naming the violated invariant.
ResolvedRun resolve(const RunConfig& cfg);

}  // namespace dwell
