#pragma once

// Experiment configuration: an INI-style file ([section] / key = value)
// layered over built-in and per-experiment defaults, with `--set
// section.key=value` overrides on top. Every key is addressed by its dotted
// path; unknown keys are rejected.
//
// Numbers accept a trailing "pi" factor ("0.7pi", "pi"). Grids accept
// "linspace:a:b:n", "logspace:a:b:n" or an explicit comma-separated list and
// must be strictly increasing.

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "topopass/disorder.hpp"
#include "topopass/dynamics.hpp"
#include "topopass/model.hpp"

namespace topopass {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "TOPOPASS_OUTPUT_DIR";

class Settings {
public:
    /// Every recognised key with its built-in default.
    static Settings defaults();

    void set(const std::string& key, const std::string& value);
    /// Parses "key=value".
    void assign(const std::string& assignment);
    void merge(const std::map<std::string, std::string>& values);
    void merge_file(const std::filesystem::path& path);

    const std::string& get(const std::string& key) const;
    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    std::uint64_t unsigned_integer(const std::string& key) const;
    std::vector<double> grid(const std::string& key) const;
    std::vector<int> integer_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

double parse_number(const std::string& text, const std::string& field);
std::vector<double> parse_grid(const std::string& text, const std::string& field);

enum class OutputFormat { Csv, Json, Svg };

struct ExperimentConfig {
    std::string experiment;
    SystemSpec system;
    SweepSchedule sweep;
    PropagationOptions propagation;
    bool evolve_fixed = false;
    double evolve_duration = 5000.0;
    DisorderSpec disorder;
    int disorder_index = 0;
    std::vector<double> theta_grid;
    std::vector<double> delta_grid;
    std::vector<double> omega_grid;
    std::vector<int> cells_list;
    std::vector<std::pair<int, int>> cell_pairs;
    std::string branch = "atom";
    std::filesystem::path output_dir;
    std::vector<OutputFormat> formats;
    unsigned threads = 0;
    Settings settings;  // fully resolved
};

/// defaults < experiment defaults < file < overrides. Throws ConfigError
/// naming the offending key on any invalid value.
Settings layered_settings(const std::string& experiment, const std::filesystem::path* file,
                          const std::vector<std::string>& overrides);

ExperimentConfig resolve_config(const std::string& experiment, const Settings& settings);

}  // namespace topopass
