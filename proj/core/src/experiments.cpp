#include "topopass/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>

#include "topopass/errors.hpp"
#include "topopass/parallel.hpp"
#include "topopass/spectral.hpp"

#ifndef TOPOPASS_VERSION
#define TOPOPASS_VERSION "0.0.0"
#endif

namespace topopass {

std::string_view library_version() { return TOPOPASS_VERSION; }

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> catalog{
        {"spectrum-vs-delta", "Fig. 2(c)", "in-gap levels of the full Hamiltonian versus detuning",
         {{"system.theta", "0.7pi"}, {"grid.delta", "linspace:-0.1:0.1:81"}}},
        {"hybrid-mode-map", "Fig. 2(d)", "site distribution of one tracked hybridized level versus detuning",
         {{"system.theta", "0.7pi"}, {"grid.delta", "linspace:-0.1:0.1:81"}}},
        {"mixing-angle-sweep", "Fig. 3(a-b)", "five-state mixing angles chi, phi versus theta for (p, q) pairs", {}},
        {"dark-state-populations", "Fig. 3(c-d)", "atom and far-edge weights of the dark state versus theta", {}},
        {"gap-map", "Fig. 4", "|G| and chi over the (N, theta) plane", {}},
        {"zero-state-map", "Fig. 5, Fig. Re_A", "site distribution of the tracked zero-energy state versus theta", {}},
        {"adiabatic-evolve", "Fig. 2(a-b), Fig. 6", "population dynamics under the sweep or at fixed theta", {}},
        {"fidelity-vs-delta", "Fig. 7(c)", "transfer fidelity at t_f versus detuning",
         {{"grid.delta", "linspace:-0.4:0.4:81"}}},
        {"fidelity-vs-omega", "Fig. 7(d)", "transfer fidelity at t_f versus sweep rate", {}},
        {"disorder-map", "Fig. 7(a-b)", "zero-state map for one sampled disorder realization",
         {{"disorder.xi_onsite", "0.001"}}},
        {"fidelity-ensemble", "Fig. 7(a-b)", "transfer fidelity statistics over disorder realizations",
         {{"disorder.xi_bond", "0.001"}}},
    };
    return catalog;
}

const ExperimentInfo* find_experiment(std::string_view name) {
    for (const auto& info : experiment_catalog())
        if (info.name == name) return &info;
    return nullptr;
}

namespace {

class Run {
public:
    explicit Run(const ExperimentConfig& config) : config_(config) {}

    std::size_t add_table(std::string name, std::vector<Column> columns) {
        ResultTable table(std::move(name), std::move(columns));
        const ExperimentInfo* info = find_experiment(config_.experiment);
        auto& meta = table.metadata();
        meta["experiment"] = config_.experiment;
        meta["figure"] = info ? info->figure : "";
        meta["version"] = library_version();
        meta["config"] = config_.settings.entries();
        meta["status"] = "running";
        result_.tables.push_back(std::move(table));
        return result_.tables.size() - 1;
    }

    ResultTable& table(std::size_t index) { return result_.tables.at(index); }

    void plot(std::size_t index, PlotSpec spec) { result_.plots.emplace_back(index, std::move(spec)); }

    // Evaluates row(i) for every grid index in parallel; rows land in grid
    // order. Completed rows are kept if any evaluation throws.
    void fill(std::size_t index, std::size_t count, const std::function<std::vector<double>(std::size_t)>& row) {
        std::vector<std::optional<std::vector<double>>> slots(count);
        try {
            parallel_for(count, config_.threads, [&](std::size_t i) { slots[i] = row(i); });
        } catch (...) {
            flush(index, slots);
            throw;
        }
        flush(index, slots);
    }

    ExperimentResult finish(bool failed, std::string error) {
        for (auto& t : result_.tables) {
            t.metadata()["status"] = failed ? "failed" : "complete";
            if (failed) t.metadata()["error"] = error;
        }
        result_.failed = failed;
        result_.error = std::move(error);
        return std::move(result_);
    }

private:
    void flush(std::size_t index, std::vector<std::optional<std::vector<double>>>& slots) {
        for (auto& s : slots)
            if (s) table(index).add_row(std::move(*s));
    }

    const ExperimentConfig& config_;
    ExperimentResult result_;
};

std::vector<Column> site_columns(const Basis& basis) {
    std::vector<Column> cols;
    for (int i = 0; i < basis.dim(); ++i) cols.push_back({"p_" + basis.label(i), "", "value"});
    return cols;
}

std::vector<std::string> site_names(const Basis& basis) {
    std::vector<std::string> names;
    for (int i = 0; i < basis.dim(); ++i) names.push_back("p_" + basis.label(i));
    return names;
}

std::vector<double> topological_thetas(const ExperimentConfig& c, int cells, std::size_t& skipped) {
    std::vector<double> out;
    for (double theta : c.theta_grid) {
        ChainParams chain = c.system.chain;
        chain.cells = cells;
        chain.theta = theta;
        if (classify_phase(chain) == Phase::Topological) out.push_back(theta);
    }
    skipped = c.theta_grid.size() - out.size();
    return out;
}

// mixing angles need at least one of G, G1, G2 nonzero
bool angles_defined(const ChainParams& chain, const CouplingScenario& scenario) {
    const FiveStateModel m = five_state_model(chain, scenario);
    return m.hybridization != 0.0 || m.coupling1 != 0.0 || m.coupling2 != 0.0;
}

template <class Keep>
std::vector<double> keep_if(const std::vector<double>& in, std::size_t& dropped, Keep keep) {
    std::vector<double> out;
    for (double x : in)
        if (keep(x)) out.push_back(x);
    dropped = in.size() - out.size();
    return out;
}

std::vector<EigenSystem> spectra(const ExperimentConfig& c, const std::vector<double>& grid,
                                 const std::function<SystemSpec(double)>& at, const DisorderRealization& disorder) {
    std::vector<EigenSystem> out(grid.size());
    parallel_for(grid.size(), c.threads,
                 [&](std::size_t i) { out[i] = eigendecompose(build_hamiltonian(at(grid[i]), disorder)); });
    return out;
}

void spectrum_vs_delta(const ExperimentConfig& c, Run& run) {
    std::vector<Column> cols{{"delta", "J", "coordinate"}};
    for (int k = 1; k <= 5; ++k) cols.push_back({"E" + std::to_string(k), "J", "value"});
    cols.push_back({"bulk_edge", "J", "value"});
    const auto t = run.add_table("spectrum_vs_delta", cols);
    run.fill(t, c.delta_grid.size(), [&](std::size_t i) {
        const double delta = c.delta_grid[i];
        const EigenSystem es = eigendecompose(build_hamiltonian(c.system.with_detuning(delta)));
        const auto five = in_gap_quintet(es);
        std::vector<double> row{delta};
        for (int k : five) row.push_back(es.values(k));
        double bulk = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < es.values.size(); ++k)
            if (std::find(five.begin(), five.end(), static_cast<int>(k)) == five.end())
                bulk = std::min(bulk, std::abs(es.values(k)));
        row.push_back(bulk);
        return row;
    });
    run.plot(t, {PlotSpec::Kind::Lines, "", "In-gap levels vs detuning", "delta", {"E1", "E2", "E3", "E4", "E5"}, "", ""});
}

void hybrid_mode_map(const ExperimentConfig& c, Run& run) {
    const Basis basis(c.system.chain.cells);
    std::vector<Column> cols{{"delta", "J", "coordinate"}, {"energy", "J", "value"}};
    for (auto& col : site_columns(basis)) cols.push_back(col);
    const auto t = run.add_table("hybrid_mode_map", cols);
    run.table(t).metadata()["branch"] = c.branch;

    const auto es = spectra(c, c.delta_grid, [&](double d) { return c.system.with_detuning(d); }, {});
    const auto five = in_gap_quintet(es.front());
    int start = 0;
    if (c.branch == "atom") {
        double best = -1.0;
        for (int k : five) {
            const double w = std::abs(es.front().vectors(basis.atom(), k));
            if (w > best) {
                best = w;
                start = k;
            }
        }
    } else {
        start = five[static_cast<std::size_t>(c.branch[0] - '0')];
    }
    RealVector reference = es.front().vectors.col(start);
    for (std::size_t i = 0; i < es.size(); ++i) {
        const TrackedState s = follow_by_overlap(es[i], reference);
        std::vector<double> row{c.delta_grid[i], s.energy};
        for (int k = 0; k < basis.dim(); ++k) row.push_back(s.vector(k) * s.vector(k));
        run.table(t).add_row(std::move(row));
        reference = s.vector;
    }
    run.plot(t, {PlotSpec::Kind::HeatmapWide, "", "Hybridized mode: site probabilities vs detuning", "delta",
                 site_names(basis), "", ""});
}

std::string pair_tag(int p, int q) { return "p" + std::to_string(p) + "_q" + std::to_string(q); }

void mixing_angle_sweep(const ExperimentConfig& c, Run& run) {
    std::vector<Column> cols{{"theta", "rad", "coordinate"}};
    std::vector<std::string> chis;
    std::vector<std::string> phis;
    for (auto [p, q] : c.cell_pairs) {
        cols.push_back({"chi_" + pair_tag(p, q), "rad", "value"});
        cols.push_back({"phi_" + pair_tag(p, q), "rad", "value"});
        chis.push_back(cols[cols.size() - 2].name);
        phis.push_back(cols.back().name);
    }
    const auto t = run.add_table("mixing_angle_sweep", cols);
    std::size_t skipped = 0, undefined = 0;
    const auto thetas = keep_if(topological_thetas(c, c.system.chain.cells, skipped), undefined, [&](double th) {
        const SystemSpec sys = c.system.at_theta(th);
        for (auto [p, q] : c.cell_pairs) {
            CouplingScenario scenario = sys.coupling;
            scenario.cell_p = p;
            scenario.cell_q = q;
            if (!angles_defined(sys.chain, scenario)) return false;
        }
        return true;
    });
    run.table(t).metadata()["skipped_non_topological_points"] = skipped;
    run.table(t).metadata()["skipped_undefined_points"] = undefined;
    run.fill(t, thetas.size(), [&](std::size_t i) {
        std::vector<double> row{thetas[i]};
        const SystemSpec sys = c.system.at_theta(thetas[i]);
        for (auto [p, q] : c.cell_pairs) {
            CouplingScenario scenario = sys.coupling;
            scenario.cell_p = p;
            scenario.cell_q = q;
            const FiveStateModel m = five_state_model(sys.chain, scenario);
            const MixingAngles a = mixing_angles(m.hybridization, m.coupling1, m.coupling2);
            row.push_back(a.chi);
            row.push_back(a.phi);
        }
        return row;
    });
    run.plot(t, {PlotSpec::Kind::Lines, "_chi", "Mixing angle chi vs theta", "theta", chis, "", ""});
    run.plot(t, {PlotSpec::Kind::Lines, "_phi", "Mixing angle phi vs theta", "theta", phis, "", ""});
}

void dark_state_populations(const ExperimentConfig& c, Run& run) {
    const auto t = run.add_table("dark_state_populations", {{"theta", "rad", "coordinate"},
                                                            {"chi", "rad", "value"},
                                                            {"phi", "rad", "value"},
                                                            {"p_atom", "", "value"},
                                                            {"p_chain1_edge", "", "value"},
                                                            {"p_chain2_edge", "", "value"}});
    std::size_t skipped = 0, undefined = 0;
    const auto thetas = keep_if(topological_thetas(c, c.system.chain.cells, skipped), undefined, [&](double th) {
        const SystemSpec sys = c.system.at_theta(th);
        return angles_defined(sys.chain, sys.coupling);
    });
    run.table(t).metadata()["skipped_non_topological_points"] = skipped;
    run.table(t).metadata()["skipped_undefined_points"] = undefined;
    run.fill(t, thetas.size(), [&](std::size_t i) {
        const SystemSpec sys = c.system.at_theta(thetas[i]);
        const DarkState d = dark_state(five_state_model(sys.chain, sys.coupling));
        return std::vector<double>{thetas[i], d.chi, d.phi, d.vector(0) * d.vector(0), d.vector(2) * d.vector(2),
                                   d.vector(4) * d.vector(4)};
    });
    run.plot(t, {PlotSpec::Kind::Lines, "", "Dark-state weights vs theta", "theta",
                 {"p_atom", "p_chain1_edge", "p_chain2_edge"}, "", ""});
}

void gap_map(const ExperimentConfig& c, Run& run) {
    const int smallest = c.cells_list.front();
    if (c.system.coupling.cell_p > smallest) throw ConfigError("exceeds the smallest grid.cells entry", "coupling.cell_p");
    if (c.system.coupling.cell_q > smallest) throw ConfigError("exceeds the smallest grid.cells entry", "coupling.cell_q");
    const auto t = run.add_table("gap_map", {{"cells", "", "coordinate"},
                                             {"theta", "rad", "coordinate"},
                                             {"abs_G", "J", "value"},
                                             {"chi", "rad", "value"},
                                             {"chi_over_pi", "", "value"}});
    std::vector<std::pair<int, double>> points;
    std::size_t skipped_total = 0, undefined_total = 0;
    for (int n : c.cells_list) {
        std::size_t skipped = 0, undefined = 0;
        const auto kept = keep_if(topological_thetas(c, n, skipped), undefined, [&](double th) {
            SystemSpec sys = c.system.at_theta(th);
            sys.chain.cells = n;
            return angles_defined(sys.chain, sys.coupling);
        });
        for (double theta : kept) points.emplace_back(n, theta);
        skipped_total += skipped;
        undefined_total += undefined;
    }
    run.table(t).metadata()["skipped_non_topological_points"] = skipped_total;
    run.table(t).metadata()["skipped_undefined_points"] = undefined_total;
    run.fill(t, points.size(), [&](std::size_t i) {
        SystemSpec sys = c.system.at_theta(points[i].second);
        sys.chain.cells = points[i].first;
        const FiveStateModel m = five_state_model(sys.chain, sys.coupling);
        const MixingAngles a = mixing_angles(m.hybridization, m.coupling1, m.coupling2);
        return std::vector<double>{static_cast<double>(points[i].first), points[i].second,
                                   std::abs(m.hybridization), a.chi, a.chi / kPi};
    });
    run.plot(t, {PlotSpec::Kind::HeatmapLong, "_abs_G", "|G| over (N, theta)", "theta", {}, "cells", "abs_G"});
    run.plot(t, {PlotSpec::Kind::HeatmapLong, "_chi", "chi/pi over (N, theta)", "theta", {}, "cells", "chi_over_pi"});
}

void zero_state_table(const ExperimentConfig& c, Run& run, const std::string& name,
                      const DisorderRealization& disorder) {
    const Basis basis(c.system.chain.cells);
    std::vector<Column> cols{{"theta", "rad", "coordinate"}, {"energy", "J", "value"}};
    for (auto& col : site_columns(basis)) cols.push_back(col);
    const auto t = run.add_table(name, cols);
    const auto es = spectra(c, c.theta_grid, [&](double th) { return c.system.at_theta(th); }, disorder);
    RealVector reference = basis.ket(basis.atom());
    for (std::size_t i = 0; i < es.size(); ++i) {
        const TrackedState s = select_zero_mode(es[i], reference);
        std::vector<double> row{c.theta_grid[i], s.energy};
        for (int k = 0; k < basis.dim(); ++k) row.push_back(s.vector(k) * s.vector(k));
        run.table(t).add_row(std::move(row));
        reference = s.vector;
    }
    run.plot(t, {PlotSpec::Kind::HeatmapWide, "", "Zero-energy state: site probabilities vs theta", "theta",
                 site_names(basis), "", ""});
}

void zero_state_map(const ExperimentConfig& c, Run& run) { zero_state_table(c, run, "zero_state_map", {}); }

void disorder_map(const ExperimentConfig& c, Run& run) {
    const DisorderRealization disorder = sample_realization(c.disorder, c.disorder_index, c.system.chain.cells);
    zero_state_table(c, run, "disorder_map", disorder);
    auto& meta = run.table(0).metadata();
    meta["seeds"] = {{"master_seed", c.disorder.master_seed},
                     {"index", c.disorder_index},
                     {"key", realization_key(c.disorder.master_seed, static_cast<std::uint64_t>(c.disorder_index))}};
    meta["disorder"] = {{"onsite", disorder.onsite}, {"bonds", disorder.bonds}};
}

void adiabatic_evolve(const ExperimentConfig& c, Run& run) {
    const int n = c.system.chain.cells;
    const Basis basis(n);
    const std::string bn = "p_B" + std::to_string(n);
    const std::string dn = "p_D" + std::to_string(n);
    const auto t = run.add_table("adiabatic_evolve", {{"time", "1/J", "coordinate"},
                                                      {"theta", "rad", "coordinate"},
                                                      {"p_atom", "", "value"},
                                                      {"p_A1", "", "value"},
                                                      {bn, "", "value"},
                                                      {"p_C1", "", "value"},
                                                      {dn, "", "value"},
                                                      {"norm", "", "value"}});
    const ComplexVector initial = atom_excited(n);
    const Trajectory traj = c.evolve_fixed ? propagate_fixed(c.system, c.evolve_duration, initial, c.propagation)
                                           : propagate(c.system, c.sweep, initial, c.propagation);
    const int sites[] = {basis.atom(), basis.a(1), basis.b(n), basis.c(1), basis.d(n)};
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const RealVector p = traj.populations(k);
        std::vector<double> row{traj.times[k], traj.thetas[k]};
        for (int s : sites) row.push_back(p(s));
        row.push_back(std::sqrt(p.sum()));
        run.table(t).add_row(std::move(row));
    }
    nlohmann::json final_pop = nlohmann::json::object();
    const RealVector p = traj.populations(traj.size() - 1);
    for (int i = 0; i < basis.dim(); ++i) final_pop[basis.label(i)] = p(i);
    run.table(t).metadata()["final_populations"] = final_pop;
    run.table(t).metadata()["mode"] = c.evolve_fixed ? "fixed" : "sweep";
    run.plot(t, {PlotSpec::Kind::Lines, "", "Population dynamics", "time", {"p_atom", "p_A1", bn, "p_C1", dn}, "", ""});
}

void fidelity_vs_delta(const ExperimentConfig& c, Run& run) {
    const auto t = run.add_table("fidelity_vs_delta", {{"delta", "J", "coordinate"}, {"fidelity", "", "value"}});
    const ComplexVector target = end_site_target(c.system.coupling, c.system.chain.cells);
    const ComplexVector initial = atom_excited(c.system.chain.cells);
    run.fill(t, c.delta_grid.size(), [&](std::size_t i) {
        const Trajectory traj = propagate(c.system.with_detuning(c.delta_grid[i]), c.sweep, initial, c.propagation);
        return std::vector<double>{c.delta_grid[i], fidelity(traj.final_state(), target)};
    });
    run.plot(t, {PlotSpec::Kind::Lines, "", "Fidelity vs detuning", "delta", {"fidelity"}, "", ""});
}

void fidelity_vs_omega(const ExperimentConfig& c, Run& run) {
    const auto t = run.add_table("fidelity_vs_omega", {{"omega", "J", "coordinate"},
                                                       {"t_final", "1/J", "value"},
                                                       {"fidelity", "", "value"}});
    const ComplexVector target = end_site_target(c.system.coupling, c.system.chain.cells);
    const ComplexVector initial = atom_excited(c.system.chain.cells);
    run.fill(t, c.omega_grid.size(), [&](std::size_t i) {
        SweepSchedule sweep = c.sweep;
        sweep.omega = c.omega_grid[i];
        const Trajectory traj = propagate(c.system, sweep, initial, c.propagation);
        return std::vector<double>{sweep.omega, sweep.duration(), fidelity(traj.final_state(), target)};
    });
    run.plot(t, {PlotSpec::Kind::Lines, "", "Fidelity vs sweep rate", "omega", {"fidelity"}, "", ""});
}

void fidelity_ensemble(const ExperimentConfig& c, Run& run) {
    const auto t = run.add_table("fidelity_ensemble", {{"realization", "", "coordinate"}, {"fidelity", "", "value"}});
    const EnsembleStats stats = ensemble_fidelity(c.system, c.sweep, c.disorder, c.propagation, c.threads);
    nlohmann::json keys = nlohmann::json::array();
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& r : stats.realizations) {
        keys.push_back(r.key);
        if (r.failed) {
            failures.push_back({{"index", r.index}, {"key", r.key}, {"error", r.error}});
            continue;
        }
        run.table(t).add_row({static_cast<double>(r.index), r.value});
    }
    auto& meta = run.table(t).metadata();
    meta["seeds"] = {{"master_seed", c.disorder.master_seed}, {"realization_keys", keys}};
    meta["failures"] = failures;
    meta["succeeded"] = stats.succeeded;
    if (stats.succeeded > 0) {
        meta["mean"] = stats.mean;
        meta["stddev"] = stats.stddev;
    }
    run.plot(t, {PlotSpec::Kind::Lines, "", "Fidelity per disorder realization", "realization", {"fidelity"}, "", ""});
}

const std::map<std::string, std::function<void(const ExperimentConfig&, Run&)>, std::less<>>& runners() {
    static const std::map<std::string, std::function<void(const ExperimentConfig&, Run&)>, std::less<>> table{
        {"spectrum-vs-delta", spectrum_vs_delta},
        {"hybrid-mode-map", hybrid_mode_map},
        {"mixing-angle-sweep", mixing_angle_sweep},
        {"dark-state-populations", dark_state_populations},
        {"gap-map", gap_map},
        {"zero-state-map", zero_state_map},
        {"adiabatic-evolve", adiabatic_evolve},
        {"fidelity-vs-delta", fidelity_vs_delta},
        {"fidelity-vs-omega", fidelity_vs_omega},
        {"disorder-map", disorder_map},
        {"fidelity-ensemble", fidelity_ensemble},
    };
    return table;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto it = runners().find(config.experiment);
    if (it == runners().end()) throw ConfigError("unknown experiment '" + config.experiment + "'", "experiment");
    Run run(config);
    try {
        it->second(config, run);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        return run.finish(true, e.what());
    }
    return run.finish(false, {});
}

std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result, const ExperimentConfig& config) {
    std::filesystem::create_directories(config.output_dir);
    const std::string stamp = utc_timestamp();
    std::vector<std::filesystem::path> written;
    auto has = [&](OutputFormat f) {
        return std::find(config.formats.begin(), config.formats.end(), f) != config.formats.end();
    };
    for (std::size_t i = 0; i < result.tables.size(); ++i) {
        const ResultTable& table = result.tables[i];
        const std::filesystem::path base = config.output_dir / table.name();
        if (has(OutputFormat::Csv)) {
            written.push_back(base.string() + ".csv");
            write_file(written.back(), table.to_csv());
            nlohmann::json sidecar = table.sidecar();
            sidecar["metadata"]["timestamp"] = stamp;
            written.push_back(base.string() + ".meta.json");
            write_file(written.back(), sidecar.dump(2) + "\n");
        }
        if (has(OutputFormat::Json)) {
            nlohmann::json doc = table.to_json();
            doc["metadata"]["timestamp"] = stamp;
            written.push_back(base.string() + ".json");
            write_file(written.back(), doc.dump(2) + "\n");
        }
        if (has(OutputFormat::Svg)) {
            for (const auto& [index, spec] : result.plots) {
                if (index != i) continue;
                written.push_back(base.string() + spec.suffix + ".svg");
                write_file(written.back(), render_svg(table, spec));
            }
        }
    }
    return written;
}

}  // namespace topopass
