// topopass: run named experiments and write CSV / JSON / SVG outputs.
//
//   topopass list
//   topopass <experiment> [--config FILE] [--set key=value ...] [--out DIR]
//                         [--format csv,json,svg] [--threads N] [--print-config]
//
// Exit status: 0 success, 2 configuration error, 1 runtime failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topopass/errors.hpp"
#include "topopass/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct RunOptions {
    std::string config_file;
    std::vector<std::string> sets;
    std::string out_dir;
    std::string formats;
    int threads = -1;
    bool print_config = false;
};

void print_catalog() {
    std::size_t width = 0;
    for (const auto& e : topopass::experiment_catalog()) width = std::max(width, e.name.size());
    for (const auto& e : topopass::experiment_catalog()) {
        std::cout << e.name << std::string(width - e.name.size() + 2, ' ') << e.figure << "  " << e.summary
                  << '\n';
    }
}

int run(const std::string& name, const RunOptions& opts) {
    using namespace topopass;
    ExperimentConfig config;
    try {
        std::vector<std::string> overrides = opts.sets;
        if (!opts.out_dir.empty()) overrides.push_back("output.dir=" + opts.out_dir);
        if (!opts.formats.empty()) overrides.push_back("output.formats=" + opts.formats);
        if (opts.threads >= 0) overrides.push_back("run.threads=" + std::to_string(opts.threads));

        std::optional<std::filesystem::path> file;
        if (!opts.config_file.empty()) file = opts.config_file;
        const Settings settings = layered_settings(name, file ? &*file : nullptr, overrides);
        config = resolve_config(name, settings);
    } catch (const ConfigError& e) {
        std::cerr << "topopass: config error: " << e.what() << '\n';
        return kExitConfig;
    }

    if (opts.print_config) {
        for (const auto& [key, value] : config.settings.entries()) std::cout << key << " = " << value << '\n';
    }

    try {
        const ExperimentResult result = run_experiment(config);
        for (const auto& path : write_outputs(result, config)) std::cout << path.string() << '\n';
        if (result.failed) {
            std::cerr << "topopass: " << name << " failed: " << result.error << " (partial outputs written)\n";
            return kExitRuntime;
        }
    } catch (const ConfigError& e) {
        std::cerr << "topopass: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "topopass: " << name << " failed: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adiabatic topological passage of a giant atom between two SSH chains"};
    app.set_version_flag("--version", std::string(topopass::library_version()));
    app.require_subcommand(1);

    app.add_subcommand("list", "List experiments and the figures they reproduce");

    RunOptions opts;
    std::string chosen;
    for (const auto& e : topopass::experiment_catalog()) {
        auto* sub = app.add_subcommand(e.name, e.summary + " [" + e.figure + "]");
        sub->add_option("-c,--config", opts.config_file, "INI file with [section] key = value entries")
            ->check(CLI::ExistingFile);
        sub->add_option("-s,--set", opts.sets, "Override one setting, e.g. coupling.g2=0.02")->allow_extra_args(false);
        sub->add_option("-o,--out", opts.out_dir, "Output directory (default: $TOPOPASS_OUTPUT_DIR or ./results)");
        sub->add_option("-f,--format", opts.formats, "Comma-separated output formats: csv, json, svg");
        sub->add_option("-j,--threads", opts.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
        sub->add_flag("--print-config", opts.print_config, "Print the resolved settings before running");
        sub->callback([&chosen, name = e.name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (app.got_subcommand("list")) {
        print_catalog();
        return kExitOk;
    }
    return run(chosen, opts);
}
