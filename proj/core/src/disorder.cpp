#include "topopass/disorder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "topopass/errors.hpp"
#include "topopass/parallel.hpp"

namespace topopass {

void DisorderSpec::validate() const {
    if (!(xi_onsite >= 0.0) || !std::isfinite(xi_onsite))
        throw ConfigError("disorder width must be >= 0", "disorder.xi_onsite");
    if (!(xi_bond >= 0.0) || !std::isfinite(xi_bond))
        throw ConfigError("disorder width must be >= 0", "disorder.xi_bond");
    if (realizations < 1) throw ConfigError("need at least one realization", "disorder.realizations");
}

std::uint64_t splitmix64(std::uint64_t x) {
    std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t realization_key(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(splitmix64(master_seed) ^ index);
}

double uniform_offset(std::uint64_t key, std::uint64_t slot, double half_width) {
    if (half_width == 0.0) return 0.0;
    const std::uint64_t bits = splitmix64(key ^ splitmix64(slot));
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return half_width * (2.0 * u - 1.0);
}

DisorderRealization sample_realization(const DisorderSpec& spec, int index, int cells) {
    spec.validate();
    if (index < 0 || index >= spec.realizations)
        throw std::out_of_range("sample_realization: index " + std::to_string(index) + " outside [0, " +
                                std::to_string(spec.realizations) + ")");
    const std::uint64_t key = realization_key(spec.master_seed, static_cast<std::uint64_t>(index));
    DisorderRealization r = DisorderRealization::clean(cells);
    std::uint64_t slot = 0;
    for (double& x : r.onsite) x = uniform_offset(key, slot++, spec.xi_onsite);
    for (double& x : r.bonds) x = uniform_offset(key, slot++, spec.xi_bond);
    return r;
}

EnsembleStats summarize(std::vector<RealizationOutcome> outcomes) {
    // Welford update: exact for constant input, so the clean limit has std = 0.
    EnsembleStats stats;
    double mean = 0.0;
    double m2 = 0.0;
    for (const auto& o : outcomes) {
        if (o.failed) continue;
        ++stats.succeeded;
        const double delta = o.value - mean;
        mean += delta / stats.succeeded;
        m2 += delta * (o.value - mean);
    }
    if (stats.succeeded == 0) {
        stats.mean = std::numeric_limits<double>::quiet_NaN();
        stats.stddev = std::numeric_limits<double>::quiet_NaN();
    } else {
        stats.mean = mean;
        stats.stddev = stats.succeeded > 1 ? std::sqrt(m2 / (stats.succeeded - 1)) : 0.0;
    }
    stats.realizations = std::move(outcomes);
    return stats;
}

EnsembleStats ensemble_fidelity(const SystemSpec& system, const SweepSchedule& schedule, const DisorderSpec& spec,
                                const ComplexVector& target, const PropagationOptions& options, unsigned threads) {
    system.validate();
    schedule.validate();
    spec.validate();
    const int cells = system.chain.cells;
    const ComplexVector initial = atom_excited(cells);

    std::vector<RealizationOutcome> outcomes(static_cast<std::size_t>(spec.realizations));
    parallel_for(outcomes.size(), threads, [&](std::size_t i) {
        RealizationOutcome& out = outcomes[i];
        out.index = static_cast<int>(i);
        out.key = realization_key(spec.master_seed, i);
        try {
            const DisorderRealization disorder = sample_realization(spec, out.index, cells);
            const Trajectory traj = propagate(system, schedule, initial, options, disorder);
            out.value = fidelity(traj.final_state(), target);
        } catch (const std::exception& e) {
            out.failed = true;
            out.value = std::numeric_limits<double>::quiet_NaN();
            out.error = e.what();
        }
    });
    return summarize(std::move(outcomes));
}

EnsembleStats ensemble_fidelity(const SystemSpec& system, const SweepSchedule& schedule, const DisorderSpec& spec,
                                const PropagationOptions& options, unsigned threads) {
    return ensemble_fidelity(system, schedule, spec, end_site_target(system.coupling, system.chain.cells), options,
                             threads);
}

}  // namespace topopass
