// scenario.hpp — Declarative scenario configs, orchestration, and deterministic CSV/JSON output.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinbath/ensemble.hpp"
#include "spinbath/oracle.hpp"

namespace spinbath {

struct GridSpec {
    double t_max{100.0};
    int num_points{1024};
    bool log_spacing{false};
    std::optional<double> t_min; // log spacing only; defaults to t_max * 1e-6
};

struct OutputFlags {
    bool trajectory{true};
    bool rates{true};
    bool bloch_coefficients{true};
    bool oracle_check{false};
    bool validity{true};
};

struct SweepSpec {
    std::string parameter;       // JSON pointer into the config, e.g. "/ensemble/species/0/varkappa"
    std::vector<double> values;
};

struct ScenarioConfig {
    EnsembleConfig ensemble;
    GridSpec grid;
    OutputFlags outputs;
    std::optional<SweepSpec> sweep;
    double validity_threshold{0.1};
    int oracle_spin_index{0};    // which spin the oracle comparison singles out
};

// Parses and validates a config file. Malformed input raises std::invalid_argument
// with the offending field's path in the message.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& json_text);

// Raw-text variant used by the sweep runner: applies `pointer = value` to the JSON
// before parsing, so swept parameters are ordinary config fields.
std::string apply_sweep_value(const std::string& json_text, const std::string& pointer, double value);

struct RunOptions {
    std::string out_dir{"."};
    bool strict{false};            // validity hard-fail -> exit 2
    std::optional<int> grid_points_override;
    double verify_tolerance{1e-8}; // gate for the verify subcommand
};

struct RunResult {
    int exit_code{0};
    std::string message;
};

// Full scenario run: writes trajectory.csv / rates.json / oracle.csv per the output
// flags, atomically (temp file + rename), with fixed 17-significant-digit formatting.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

// rates.json only.
RunResult run_rates_only(const ScenarioConfig& cfg, const RunOptions& opts);

// Oracle comparison for pure-dephasing scenarios; writes oracle.csv and gates the
// exit code on max substituted deviation < verify_tolerance.
RunResult run_verify(const ScenarioConfig& cfg, const RunOptions& opts);

// Concurrent sweep: one subdirectory per value (sweep_000, sweep_001, ...) plus a
// sweep_index.csv mapping directories to parameter values.
RunResult run_sweep(const std::string& config_text, const ScenarioConfig& base, const RunOptions& opts);

// Builds the oracle description of a pure-dephasing scenario (lambda = mu = 0,
// homogeneous varkappa, equal populations on the non-singled-out spins);
// throws std::invalid_argument otherwise.
OracleConfig oracle_from_scenario(const ScenarioConfig& cfg);

// Deterministic number formatting used by every writer: %.17g, "nan" for undefined.
std::string format_double(double v);

} // namespace spinbath
