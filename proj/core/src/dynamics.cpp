#include "topopass/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "topopass/errors.hpp"
#include "topopass/spectral.hpp"

namespace topopass {

void SweepSchedule::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("sweep rate must be positive", "sweep.omega");
    if (!(theta_start >= 0.0)) throw ConfigError("start angle must be >= 0", "sweep.theta_start");
    if (!(theta_start < theta_end)) throw ConfigError("start angle must be below end angle", "sweep.theta_end");
    if (!(theta_end <= 2.0 * kPi)) throw ConfigError("end angle must be <= 2*pi", "sweep.theta_end");
}

RealVector Trajectory::populations(std::size_t sample) const {
    return states.at(sample).cwiseAbs2();
}

std::vector<double> Trajectory::population_series(int site) const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(std::norm(s(site)));
    return out;
}

namespace {

constexpr double kMaxSteps = 1e9;

void check_unit_norm(const ComplexVector& state, const char* what) {
    const double n2 = state.squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-9)
        throw InputError(std::string(what) + ": state is not unit norm (|psi|^2 = " + std::to_string(n2) + ")");
}

using StateColumns = Eigen::Matrix<double, Eigen::Dynamic, 2>;

// Applies exp(-i H h) to a state stored as [Re, Im] columns.
void apply_exponential(const EigenSystem& es, double h, StateColumns& psi) {
    StateColumns c = es.vectors.transpose() * psi;
    for (Eigen::Index k = 0; k < c.rows(); ++k) {
        const double phase = -es.values(k) * h;
        const double cs = std::cos(phase);
        const double sn = std::sin(phase);
        const double re = c(k, 0);
        const double im = c(k, 1);
        c(k, 0) = cs * re - sn * im;
        c(k, 1) = sn * re + cs * im;
    }
    psi.noalias() = es.vectors * c;
}

ComplexVector to_complex(const StateColumns& psi) {
    ComplexVector out(psi.rows());
    for (Eigen::Index k = 0; k < psi.rows(); ++k) out(k) = {psi(k, 0), psi(k, 1)};
    return out;
}

Trajectory run(const SystemSpec& system, double duration, const std::function<double(double)>& theta_at,
               bool frozen, const ComplexVector& initial, const PropagationOptions& options,
               const DisorderRealization& disorder) {
    system.validate();
    disorder.validate(system.chain.cells);
    const Basis basis(system.chain.cells);
    if (initial.size() != basis.dim()) throw InputError("propagate: initial state has wrong dimension");
    check_unit_norm(initial, "propagate");
    if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw InputError("propagate: dt must be positive");
    if (options.sample_every < 0) throw InputError("propagate: sample_every must be >= 0");
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw InputError("propagate: invalid duration");

    const double wanted = std::ceil(duration / options.dt - 1e-9);
    if (wanted > kMaxSteps)
        throw InputError("propagate: " + std::to_string(wanted) + " steps exceed the limit of " +
                         std::to_string(kMaxSteps) + "; raise dt or shorten the run");
    const auto steps = static_cast<long long>(wanted);
    const double h = steps > 0 ? duration / static_cast<double>(steps) : 0.0;
    long long every = options.sample_every;
    if (every == 0) every = std::max<long long>(1, (steps + 4998) / 4999);

    StateColumns psi(basis.dim(), 2);
    psi.col(0) = initial.real();
    psi.col(1) = initial.imag();

    Trajectory traj;
    auto record = [&](long long step) {
        if (!psi.allFinite()) throw NumericError("propagate: state became non-finite");
        const double t = static_cast<double>(step) * h;
        traj.times.push_back(t);
        traj.thetas.push_back(theta_at(t));
        traj.states.push_back(to_complex(psi));
    };
    record(0);

    EigenSystem frozen_es;
    if (frozen) frozen_es = eigendecompose(build_hamiltonian(system, disorder));

    for (long long step = 0; step < steps; ++step) {
        if (frozen) {
            apply_exponential(frozen_es, h, psi);
        } else {
            const double midpoint = theta_at((static_cast<double>(step) + 0.5) * h);
            apply_exponential(eigendecompose(build_hamiltonian(system.at_theta(midpoint), disorder)), h, psi);
        }
        if ((step + 1) % every == 0 || step + 1 == steps) record(step + 1);
    }
    return traj;
}

}  // namespace

Trajectory propagate(const SystemSpec& system, const SweepSchedule& schedule, const ComplexVector& initial,
                     const PropagationOptions& options, const DisorderRealization& disorder) {
    schedule.validate();
    const SystemSpec start = system.at_theta(schedule.theta_start);
    return run(start, schedule.duration(), [&](double t) { return schedule.theta_at(t); }, false, initial,
               options, disorder);
}

Trajectory propagate_fixed(const SystemSpec& system, double duration, const ComplexVector& initial,
                           const PropagationOptions& options, const DisorderRealization& disorder) {
    const double theta = system.chain.theta;
    return run(system, duration, [theta](double) { return theta; }, true, initial, options, disorder);
}

ComplexVector atom_excited(int cells) {
    const Basis basis(cells);
    ComplexVector psi = ComplexVector::Zero(basis.dim());
    psi(basis.atom()) = 1.0;
    return psi;
}

double fidelity(const ComplexVector& final_state, const ComplexVector& target) {
    if (final_state.size() != target.size()) throw InputError("fidelity: dimension mismatch");
    check_unit_norm(final_state, "fidelity");
    check_unit_norm(target, "fidelity");
    return std::min(1.0, std::abs(target.dot(final_state)));
}

std::pair<int, int> passage_end_sites(const CouplingScenario& scenario, int cells) {
    const Basis basis(cells);
    const int end1 = scenario.chain1_site == Chain1Site::A ? basis.b(cells) : basis.a(1);
    const int end2 = scenario.chain2_site == Chain2Site::C ? basis.d(cells) : basis.c(1);
    return {end1, end2};
}

ComplexVector end_site_target(const CouplingScenario& scenario, int cells) {
    const auto [end1, end2] = passage_end_sites(scenario, cells);
    ComplexVector psi = ComplexVector::Zero(Basis(cells).dim());
    psi(end1) = M_SQRT1_2;
    psi(end2) = M_SQRT1_2;
    return psi;
}

ComplexVector standard_target(const CouplingScenario& scenario, int cells) {
    if (scenario.chain1_site != Chain1Site::A || scenario.chain2_site != Chain2Site::C)
        throw InputError("standard_target is defined for the (A, C) scenario only; supply an explicit target");
    return end_site_target(scenario, cells);
}

}  // namespace topopass
