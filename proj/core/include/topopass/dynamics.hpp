#pragma once

// Time-dependent Schrodinger evolution under the hopping sweep
// theta(t) = theta_start + omega * t.

#include <utility>
#include <vector>

#include "topopass/model.hpp"

namespace topopass {

struct SweepSchedule {
    double omega = 1e-4;  // d theta / dt
    double theta_start = 0.0;
    double theta_end = kPi;

    void validate() const;
    double duration() const { return (theta_end - theta_start) / omega; }
    double theta_at(double t) const { return theta_start + omega * t; }
};

struct PropagationOptions {
    double dt = 0.1;
    // Record every n-th step; 0 picks the smallest n giving at most 5000 samples.
    int sample_every = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> thetas;
    std::vector<ComplexVector> states;

    std::size_t size() const noexcept { return times.size(); }
    const ComplexVector& final_state() const { return states.back(); }
    RealVector populations(std::size_t sample) const;
    std::vector<double> population_series(int site) const;
};

/// Step-wise exact propagation: during each step H is frozen at the
/// midpoint angle and the state is advanced by exp(-i H dt), assembled from
/// the eigendecomposition of H. The step is shrunk slightly so an integer
/// number of steps lands exactly on the final time, which is always sampled.
///
/// Throws InputError when |<psi|psi> - 1| > 1e-9, dt <= 0 or the run needs
/// more than 1e9 steps, and
/// NumericError when the state becomes non-finite.
Trajectory propagate(const SystemSpec& system, const SweepSchedule& schedule, const ComplexVector& initial,
                     const PropagationOptions& options = {}, const DisorderRealization& disorder = {});

/// Evolution at the fixed angle system.chain.theta for `duration`.
Trajectory propagate_fixed(const SystemSpec& system, double duration, const ComplexVector& initial,
                           const PropagationOptions& options = {}, const DisorderRealization& disorder = {});

/// Atom excited, both chains empty.
ComplexVector atom_excited(int cells);

/// |<target|final>|, clamped to [0, 1]. Both states must be unit norm.
double fidelity(const ComplexVector& final_state, const ComplexVector& target);

/// Sites at the far ends of the chains, where the passage deposits the
/// excitation: chain 1 -> B_N for an A contact, A_1 for a B contact;
/// chain 2 -> D_N for a C contact, C_1 for a D contact.
std::pair<int, int> passage_end_sites(const CouplingScenario& scenario, int cells);

/// Equal superposition of the two passage end sites, any scenario.
ComplexVector end_site_target(const CouplingScenario& scenario, int cells);

/// (|B_N> + |D_N>)/sqrt(2). Only defined for the (A, C) scenario; other
/// scenarios need an explicit target (see end_site_target).
ComplexVector standard_target(const CouplingScenario& scenario, int cells);

}  // namespace topopass
