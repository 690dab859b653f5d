#pragma once

// Named experiments, one per reproduced figure panel group, and their
// output files.
//
// Output layout under ExperimentConfig::output_dir, per table <name>:
//   <name>.csv         header row + rows (csv format)
//   <name>.meta.json   schema and metadata sidecar (always with csv)
//   <name>.json        schema, metadata and rows (json format)
//   <name><suffix>.svg one file per plot (svg format)

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topopass/config.hpp"
#include "topopass/svg.hpp"
#include "topopass/table.hpp"

namespace topopass {

struct ExperimentInfo {
    std::string name;
    std::string figure;   // which figure panels it reproduces
    std::string summary;
    std::map<std::string, std::string> defaults;  // overrides of Settings::defaults()
};

const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo* find_experiment(std::string_view name);

std::string_view library_version();

struct ExperimentResult {
    std::vector<ResultTable> tables;
    std::vector<std::pair<std::size_t, PlotSpec>> plots;  // (table index, plot)
    bool failed = false;
    std::string error;
};

/// Runs the configured experiment. ConfigError propagates; any other
/// failure is captured in the result, which keeps the rows finished so far.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes every table in the configured formats; returns the paths written.
/// The sidecar carries a wall-clock timestamp, the CSV does not.
std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result, const ExperimentConfig& config);

}  // namespace topopass
