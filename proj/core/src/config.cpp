#include "topopass/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "topopass/errors.hpp"
#include "topopass/experiments.hpp"

namespace topopass {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    return parts;
}

std::string default_output_dir() {
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return "results";
}

void check_increasing(const std::vector<double>& grid, const std::string& field) {
    if (grid.empty()) throw ConfigError("grid is empty", field);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly increasing", field);
}

}  // namespace

Settings Settings::defaults() {
    Settings s;
    s.entries_ = {
        {"system.cells", "4"},
        {"system.hopping", "1"},
        {"system.theta", "0.7pi"},
        {"system.reference_frequency", "0"},
        {"coupling.chain1_site", "A"},
        {"coupling.cell_p", "1"},
        {"coupling.chain2_site", "C"},
        {"coupling.cell_q", "1"},
        {"coupling.g1", "0.01"},
        {"coupling.g2", "0.01"},
        {"coupling.detuning", "0"},
        {"sweep.omega", "1e-4"},
        {"sweep.theta_start", "0"},
        {"sweep.theta_end", "pi"},
        {"propagation.dt", "0.1"},
        {"propagation.sample_every", "0"},
        {"evolve.mode", "sweep"},
        {"evolve.duration", "5000"},
        {"disorder.xi_onsite", "0"},
        {"disorder.xi_bond", "0"},
        {"disorder.realizations", "20"},
        {"disorder.seed", "1"},
        {"disorder.index", "0"},
        {"grid.theta", "linspace:0:pi:200"},
        {"grid.delta", "linspace:-0.1:0.1:81"},
        {"grid.omega", "logspace:1e-5:1e-2:10"},
        {"grid.cells", "2,3,4,5,6,7,8,9,10"},
        {"grid.pairs", "1:4,2:4,3:4,4:4"},
        {"hybrid.branch", "atom"},
        {"output.dir", default_output_dir()},
        {"output.formats", "csv,svg"},
        {"run.threads", "0"},
    };
    return s;
}

void Settings::set(const std::string& key, const std::string& value) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("unknown setting", key);
    it->second = trim(value);
}

void Settings::assign(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'", "--set");
    set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void Settings::merge(const std::map<std::string, std::string>& values) {
    for (const auto& [k, v] : values) set(k, v);
}

void Settings::merge_file(const std::filesystem::path& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(e.message() + " (line " + std::to_string(e.line()) + ")", path.string());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("top-level keys must live in a [section]", section);
        for (const auto& [key, value] : body) set(section + "." + key, value.data());
    }
}

const std::string& Settings::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("unknown setting", key);
    return it->second;
}

double Settings::number(const std::string& key) const { return parse_number(get(key), key); }

int Settings::integer(const std::string& key) const {
    const std::string& text = get(key);
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0') throw ConfigError("expected an integer, got '" + text + "'", key);
    return static_cast<int>(value);
}

std::uint64_t Settings::unsigned_integer(const std::string& key) const {
    const std::string& text = get(key);
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || text.front() == '-')
        throw ConfigError("expected a non-negative integer, got '" + text + "'", key);
    return value;
}

std::vector<double> Settings::grid(const std::string& key) const { return parse_grid(get(key), key); }

std::vector<int> Settings::integer_list(const std::string& key) const {
    std::vector<int> out;
    for (const auto& part : split(get(key), ',')) {
        char* end = nullptr;
        const long v = std::strtol(part.c_str(), &end, 10);
        if (part.empty() || *end != '\0') throw ConfigError("expected integers, got '" + part + "'", key);
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError("list is empty", key);
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw ConfigError("list must be strictly increasing", key);
    return out;
}

double parse_number(const std::string& raw, const std::string& field) {
    std::string text = trim(raw);
    double factor = 1.0;
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        factor = kPi;
        text = trim(text.substr(0, text.size() - 2));
        if (!text.empty() && text.back() == '*') text.pop_back();
        if (text.empty() || text == "+") return factor;
        if (text == "-") return -factor;
    }
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(value))
        throw ConfigError("expected a number, got '" + raw + "'", field);
    return value * factor;
}

std::vector<double> parse_grid(const std::string& text, const std::string& field) {
    std::vector<double> grid;
    const auto parts = split(text, ':');
    if (parts.size() == 4 && (parts[0] == "linspace" || parts[0] == "logspace")) {
        const double a = parse_number(parts[1], field);
        const double b = parse_number(parts[2], field);
        char* end = nullptr;
        const long n = std::strtol(parts[3].c_str(), &end, 10);
        if (*end != '\0' || n < 1) throw ConfigError("grid point count must be a positive integer", field);
        if (n == 1) return {a};
        if (parts[0] == "linspace") {
            for (long i = 0; i < n; ++i) grid.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
            grid.back() = b;
        } else {
            if (!(a > 0.0 && b > 0.0)) throw ConfigError("logspace bounds must be positive", field);
            const double la = std::log10(a);
            const double lb = std::log10(b);
            for (long i = 0; i < n; ++i)
                grid.push_back(std::pow(10.0, la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1)));
            grid.front() = a;
            grid.back() = b;
        }
    } else {
        for (const auto& part : split(text, ',')) grid.push_back(parse_number(part, field));
    }
    check_increasing(grid, field);
    return grid;
}

Settings layered_settings(const std::string& experiment, const std::filesystem::path* file,
                          const std::vector<std::string>& overrides) {
    const ExperimentInfo* info = find_experiment(experiment);
    if (!info) throw ConfigError("unknown experiment '" + experiment + "'", "experiment");
    Settings settings = Settings::defaults();
    settings.merge(info->defaults);
    if (file) settings.merge_file(*file);
    for (const auto& o : overrides) settings.assign(o);
    return settings;
}

ExperimentConfig resolve_config(const std::string& experiment, const Settings& s) {
    if (!find_experiment(experiment)) throw ConfigError("unknown experiment '" + experiment + "'", "experiment");
    ExperimentConfig c;
    c.experiment = experiment;
    c.settings = s;

    c.system.chain.cells = s.integer("system.cells");
    c.system.chain.hopping = s.number("system.hopping");
    c.system.chain.theta = s.number("system.theta");
    c.system.chain.reference_frequency = s.number("system.reference_frequency");

    const std::string& site1 = s.get("coupling.chain1_site");
    if (site1 != "A" && site1 != "B") throw ConfigError("must be A or B", "coupling.chain1_site");
    const std::string& site2 = s.get("coupling.chain2_site");
    if (site2 != "C" && site2 != "D") throw ConfigError("must be C or D", "coupling.chain2_site");
    c.system.coupling.chain1_site = site1 == "A" ? Chain1Site::A : Chain1Site::B;
    c.system.coupling.chain2_site = site2 == "C" ? Chain2Site::C : Chain2Site::D;
    c.system.coupling.cell_p = s.integer("coupling.cell_p");
    c.system.coupling.cell_q = s.integer("coupling.cell_q");
    c.system.coupling.g1 = s.number("coupling.g1");
    c.system.coupling.g2 = s.number("coupling.g2");
    c.system.coupling.detuning = s.number("coupling.detuning");
    c.system.validate();

    c.sweep.omega = s.number("sweep.omega");
    c.sweep.theta_start = s.number("sweep.theta_start");
    c.sweep.theta_end = s.number("sweep.theta_end");
    c.sweep.validate();

    c.propagation.dt = s.number("propagation.dt");
    if (!(c.propagation.dt > 0.0)) throw ConfigError("must be positive", "propagation.dt");
    c.propagation.sample_every = s.integer("propagation.sample_every");
    if (c.propagation.sample_every < 0) throw ConfigError("must be >= 0", "propagation.sample_every");

    const std::string& mode = s.get("evolve.mode");
    if (mode != "sweep" && mode != "fixed") throw ConfigError("must be sweep or fixed", "evolve.mode");
    c.evolve_fixed = mode == "fixed";
    c.evolve_duration = s.number("evolve.duration");
    if (!(c.evolve_duration > 0.0)) throw ConfigError("must be positive", "evolve.duration");

    c.disorder.xi_onsite = s.number("disorder.xi_onsite");
    c.disorder.xi_bond = s.number("disorder.xi_bond");
    c.disorder.realizations = s.integer("disorder.realizations");
    c.disorder.master_seed = s.unsigned_integer("disorder.seed");
    c.disorder.validate();
    c.disorder_index = s.integer("disorder.index");
    if (c.disorder_index < 0 || c.disorder_index >= c.disorder.realizations)
        throw ConfigError("must lie in [0, disorder.realizations)", "disorder.index");

    c.theta_grid = s.grid("grid.theta");
    if (c.theta_grid.front() < 0.0 || c.theta_grid.back() > 2.0 * kPi)
        throw ConfigError("angles must lie in [0, 2*pi]", "grid.theta");
    c.delta_grid = s.grid("grid.delta");
    c.omega_grid = s.grid("grid.omega");
    if (c.omega_grid.front() <= 0.0) throw ConfigError("sweep rates must be positive", "grid.omega");
    c.cells_list = s.integer_list("grid.cells");
    if (c.cells_list.front() < 1) throw ConfigError("cell counts must be >= 1", "grid.cells");

    for (const auto& item : split(s.get("grid.pairs"), ',')) {
        const auto pq = split(item, ':');
        if (pq.size() != 2) throw ConfigError("expected p:q pairs, got '" + item + "'", "grid.pairs");
        char* e1 = nullptr;
        char* e2 = nullptr;
        const long p = std::strtol(pq[0].c_str(), &e1, 10);
        const long q = std::strtol(pq[1].c_str(), &e2, 10);
        if (*e1 != '\0' || *e2 != '\0' || pq[0].empty() || pq[1].empty())
            throw ConfigError("expected p:q pairs, got '" + item + "'", "grid.pairs");
        if (p < 1 || p > c.system.chain.cells || q < 1 || q > c.system.chain.cells)
            throw ConfigError("cells must lie in [1, system.cells]", "grid.pairs");
        c.cell_pairs.emplace_back(static_cast<int>(p), static_cast<int>(q));
    }

    c.branch = s.get("hybrid.branch");
    if (c.branch != "atom" && !(c.branch.size() == 1 && c.branch[0] >= '0' && c.branch[0] <= '4'))
        throw ConfigError("must be 'atom' or a quintet index 0-4", "hybrid.branch");

    c.output_dir = s.get("output.dir");
    if (c.output_dir.empty()) throw ConfigError("must not be empty", "output.dir");
    for (const auto& f : split(s.get("output.formats"), ',')) {
        if (f == "csv") c.formats.push_back(OutputFormat::Csv);
        else if (f == "json") c.formats.push_back(OutputFormat::Json);
        else if (f == "svg") c.formats.push_back(OutputFormat::Svg);
        else throw ConfigError("unknown format '" + f + "' (csv, json, svg)", "output.formats");
    }
    if (c.formats.empty()) throw ConfigError("no output format selected", "output.formats");

    const int threads = s.integer("run.threads");
    if (threads < 0) throw ConfigError("must be >= 0", "run.threads");
    c.threads = static_cast<unsigned>(threads);
    return c;
}

}  // namespace topopass
