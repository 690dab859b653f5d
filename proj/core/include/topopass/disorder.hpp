#pragma once

// Reproducible static disorder and ensemble statistics.
//
// Offsets come from a counter-based generator, so a realization depends only
// on (master_seed, realization index, slot) and not on draw order or thread
// scheduling:
//
//   mix(x)       = SplitMix64 output function applied to x + 0x9e3779b97f4a7c15
//   key(s, i)    = mix(mix(s) ^ i)                     per-realization seed
//   bits(k, j)   = mix(k ^ mix(j))                     j = slot id
//   u            = (bits >> 11) * 2^-53                in [0, 1)
//   offset       = xi * (2u - 1)                       in [-xi, xi)
//
// Slots 0 .. 4N-1 are the lattice sites in basis order; slot 4N + k is bond k
// in DisorderRealization::bonds order. xi = 0 yields exact zeros.

#include <cstdint>
#include <string>
#include <vector>

#include "topopass/dynamics.hpp"
#include "topopass/model.hpp"

namespace topopass {

struct DisorderSpec {
    double xi_onsite = 0.0;  // half-width of site-frequency offsets
    double xi_bond = 0.0;    // half-width of hopping offsets
    int realizations = 1;
    std::uint64_t master_seed = 0;

    void validate() const;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t realization_key(std::uint64_t master_seed, std::uint64_t index);
double uniform_offset(std::uint64_t key, std::uint64_t slot, double half_width);

/// Throws std::out_of_range when index >= spec.realizations.
DisorderRealization sample_realization(const DisorderSpec& spec, int index, int cells);

struct RealizationOutcome {
    int index = 0;
    std::uint64_t key = 0;
    double value = 0.0;  // NaN when failed
    bool failed = false;
    std::string error;
};

struct EnsembleStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation, 0 for a single entry
    int succeeded = 0;
    std::vector<RealizationOutcome> realizations;  // ordered by index
};

/// Mean and standard deviation of the non-failed outcomes, summed in index
/// order so the result does not depend on how the work was scheduled.
EnsembleStats summarize(std::vector<RealizationOutcome> outcomes);

/// Sweeps every realization from the atom-excited state and records the
/// fidelity of the final state with `target`. Failed realizations are kept
/// in the output with their key and error text.
EnsembleStats ensemble_fidelity(const SystemSpec& system, const SweepSchedule& schedule, const DisorderSpec& spec,
                                const ComplexVector& target, const PropagationOptions& options = {},
                                unsigned threads = 0);

/// Same, targeting the passage end sites of the scenario.
EnsembleStats ensemble_fidelity(const SystemSpec& system, const SweepSchedule& schedule, const DisorderSpec& spec,
                                const PropagationOptions& options = {}, unsigned threads = 0);

}  // namespace topopass
