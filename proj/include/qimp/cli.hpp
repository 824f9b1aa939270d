// Command-line front end: configuration resolution and the four commands.

#pragma once

#include "qimp/evolution.hpp"
#include "qimp/experiments.hpp"
#include "qimp/regimes.hpp"
#include "qimp/validation.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qimp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInvariantViolation = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat "section.key" -> value map. Every known key is present after
/// default_entries(); unknown keys are rejected when merged.
using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues default_entries();
/// Reads an INI file; keys outside the known set raise ConfigError.
void merge_ini(KeyValues& kv, const std::filesystem::path& path);
/// Applies one "section.key=value" assignment.
void apply_assignment(KeyValues& kv, std::string_view assignment);
void set_entry(KeyValues& kv, const std::string& key, const std::string& value);

/// 64-bit FNV-1a over the canonical "key=value\n" listing, as 16 hex digits.
std::string config_hash(const KeyValues& kv);

enum class OutputFormat { Csv, Json, Both };

struct TimeGridSpec {
    double t_start = 0.0;
    std::optional<double> t_end;  ///< absolute end time; otherwise t_end_gamma / gamma
    double t_end_gamma = 10.0;
    std::size_t points = 200;

    std::vector<double> values(double gamma) const;
};

struct RunConfig {
    SystemParams params;
    QubitPreparation prep;

    std::vector<Approach> simulate_approaches;
    TimeGridSpec simulate_grid;
    Integrator simulate_integrator = Integrator::Exponential;

    std::vector<double> g_list;
    std::vector<Approach> sweep_approaches;
    TimeGridSpec sweep_grid;
    Integrator sweep_integrator = Integrator::Exponential;
    double fit_window_gamma = 0.5;  ///< decay-rate fit window, in units of 1/gamma

    DiagramSpec diagram;
    ValidationOptions validation;

    std::filesystem::path out_dir;
    OutputFormat format = OutputFormat::Csv;
    bool plot_script = false;

    KeyValues entries;
    std::string hash;
};

/// Typed view of the entries. Throws ConfigError on malformed values and
/// ParameterError on physically invalid ones.
RunConfig resolve(const KeyValues& kv);

int cmd_simulate(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_diagram(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);

/// Runs body, mapping library exceptions to exit codes (2 for configuration
/// and parameter errors, 3 for invariant violations).
int run_guarded(const std::function<int()>& body);

/// Full entry point; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace qimp::cli
