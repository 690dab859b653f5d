#include "topopass/model.hpp"

#include <cmath>

#include "topopass/errors.hpp"

namespace topopass {

void ChainParams::validate() const {
    if (cells < 1) throw ConfigError("cell count must be >= 1", "system.cells");
    if (!(hopping > 0.0) || !std::isfinite(hopping))
        throw ConfigError("hopping must be positive and finite", "system.hopping");
    // Rejected rather than wrapped.
    if (!(theta >= 0.0 && theta <= 2.0 * kPi))
        throw ConfigError("theta must lie in [0, 2*pi]", "system.theta");
    if (!std::isfinite(reference_frequency))
        throw ConfigError("reference frequency must be finite", "system.reference_frequency");
}

Hoppings hopping_amplitudes(const ChainParams& params) {
    params.validate();
    const double c = std::cos(params.theta);
    // Clamp the last-ulp negatives cos() can produce at theta = 0, pi, 2pi.
    return {std::max(0.0, params.hopping * (1.0 + c)), std::max(0.0, params.hopping * (1.0 - c))};
}

Phase classify_phase(const Hoppings& hoppings, double scale) {
    if (std::abs(hoppings.intra - hoppings.inter) <= 1e-12 * scale) return Phase::Critical;
    return hoppings.intra > hoppings.inter ? Phase::Trivial : Phase::Topological;
}

Phase classify_phase(const ChainParams& params) {
    return classify_phase(hopping_amplitudes(params), params.hopping);
}

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::Trivial: return "trivial";
        case Phase::Critical: return "critical";
        case Phase::Topological: return "topological";
    }
    return "?";
}

std::string_view to_string(Chain1Site site) { return site == Chain1Site::A ? "A" : "B"; }
std::string_view to_string(Chain2Site site) { return site == Chain2Site::C ? "C" : "D"; }

void CouplingScenario::validate(int cells) const {
    if (cell_p < 1 || cell_p > cells) throw ConfigError("cell must lie in [1, N]", "coupling.cell_p");
    if (cell_q < 1 || cell_q > cells) throw ConfigError("cell must lie in [1, N]", "coupling.cell_q");
    if (!(g1 >= 0.0) || !std::isfinite(g1)) throw ConfigError("coupling must be >= 0", "coupling.g1");
    if (!(g2 >= 0.0) || !std::isfinite(g2)) throw ConfigError("coupling must be >= 0", "coupling.g2");
    if (!std::isfinite(detuning)) throw ConfigError("detuning must be finite", "coupling.detuning");
}

void SystemSpec::validate() const {
    chain.validate();
    coupling.validate(chain.cells);
}

SystemSpec SystemSpec::at_theta(double theta) const {
    SystemSpec copy = *this;
    copy.chain.theta = theta;
    return copy;
}

SystemSpec SystemSpec::with_detuning(double detuning) const {
    SystemSpec copy = *this;
    copy.coupling.detuning = detuning;
    return copy;
}

Basis::Basis(int cells) : cells_(cells) {
    if (cells < 1) throw ConfigError("cell count must be >= 1", "system.cells");
}

int Basis::check(int cell) const {
    if (cell < 1 || cell > cells_) throw ConfigError("cell index out of range [1, N]");
    return cell;
}

int Basis::chain1_contact(const CouplingScenario& scenario) const {
    return scenario.chain1_site == Chain1Site::A ? a(scenario.cell_p) : b(scenario.cell_p);
}

int Basis::chain2_contact(const CouplingScenario& scenario) const {
    return scenario.chain2_site == Chain2Site::C ? c(scenario.cell_q) : d(scenario.cell_q);
}

std::string Basis::label(int index) const {
    if (index == atom()) return "atom";
    if (index < 0 || index > atom()) throw ConfigError("basis index out of range");
    const int chain_local = index % (2 * cells_);
    const bool second_chain = index >= 2 * cells_;
    const int cell = chain_local / 2 + 1;
    const bool odd = chain_local % 2 == 1;
    const char* name = second_chain ? (odd ? "D" : "C") : (odd ? "B" : "A");
    return name + std::to_string(cell);
}

RealVector Basis::ket(int index) const {
    RealVector v = RealVector::Zero(dim());
    v(index) = 1.0;
    return v;
}

int total_bond_count(int cells) { return 2 * (2 * cells - 1); }

DisorderRealization DisorderRealization::clean(int cells) {
    return {std::vector<double>(static_cast<std::size_t>(4 * cells), 0.0),
            std::vector<double>(static_cast<std::size_t>(total_bond_count(cells)), 0.0)};
}

bool DisorderRealization::is_clean() const {
    for (double x : onsite)
        if (x != 0.0) return false;
    for (double x : bonds)
        if (x != 0.0) return false;
    return true;
}

void DisorderRealization::validate(int cells) const {
    if (!onsite.empty() && onsite.size() != static_cast<std::size_t>(4 * cells))
        throw ConfigError("expected 4N onsite offsets, got " + std::to_string(onsite.size()),
                          "disorder.onsite");
    if (!bonds.empty() && bonds.size() != static_cast<std::size_t>(total_bond_count(cells)))
        throw ConfigError("expected 2(2N-1) bond offsets, got " + std::to_string(bonds.size()),
                          "disorder.bonds");
    for (double x : onsite)
        if (!std::isfinite(x)) throw ConfigError("non-finite onsite offset", "disorder.onsite");
    for (double x : bonds)
        if (!std::isfinite(x)) throw ConfigError("non-finite bond offset", "disorder.bonds");
}

namespace {

void set_symmetric(RealMatrix& h, int i, int j, double value) {
    h(i, j) = value;
    h(j, i) = value;
}

// Chain block starting at `offset`, including bond offsets for this chain.
void fill_chain(RealMatrix& h, int offset, int cells, const Hoppings& hop, const double* bond_offsets) {
    const int sites = 2 * cells;
    for (int k = 0; k + 1 < sites; ++k) {
        double t = (k % 2 == 0) ? hop.intra : hop.inter;
        if (bond_offsets) t += bond_offsets[k];
        set_symmetric(h, offset + k, offset + k + 1, t);
    }
}

}  // namespace

RealMatrix chain_hamiltonian(const ChainParams& params) {
    const Hoppings hop = hopping_amplitudes(params);
    RealMatrix h = RealMatrix::Zero(2 * params.cells, 2 * params.cells);
    fill_chain(h, 0, params.cells, hop, nullptr);
    return h;
}

RealMatrix build_hamiltonian(const ChainParams& params, const CouplingScenario& scenario,
                             const DisorderRealization& disorder) {
    params.validate();
    scenario.validate(params.cells);
    disorder.validate(params.cells);

    const int n = params.cells;
    const Basis basis(n);
    const Hoppings hop = hopping_amplitudes(params);
    RealMatrix h = RealMatrix::Zero(basis.dim(), basis.dim());

    const int bonds_per_chain = 2 * n - 1;
    const double* bonds = disorder.bonds.empty() ? nullptr : disorder.bonds.data();
    fill_chain(h, 0, n, hop, bonds);
    fill_chain(h, 2 * n, n, hop, bonds ? bonds + bonds_per_chain : nullptr);

    for (std::size_t i = 0; i < disorder.onsite.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        h(k, k) = disorder.onsite[i];
    }

    const int atom = basis.atom();
    h(atom, atom) = scenario.detuning;
    set_symmetric(h, atom, basis.chain1_contact(scenario), scenario.g1);
    set_symmetric(h, atom, basis.chain2_contact(scenario), scenario.g2);
    return h;
}

RealMatrix build_hamiltonian(const SystemSpec& system, const DisorderRealization& disorder) {
    return build_hamiltonian(system.chain, system.coupling, disorder);
}

RealMatrix disorder_perturbation(int cells, const DisorderRealization& disorder) {
    disorder.validate(cells);
    const Basis basis(cells);
    RealMatrix h = RealMatrix::Zero(basis.dim(), basis.dim());
    for (std::size_t i = 0; i < disorder.onsite.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        h(k, k) = disorder.onsite[i];
    }
    const int bonds_per_chain = 2 * cells - 1;
    for (std::size_t i = 0; i < disorder.bonds.size(); ++i) {
        const int chain = static_cast<int>(i) / bonds_per_chain;
        const int k = static_cast<int>(i) % bonds_per_chain;
        const int site = chain * 2 * cells + k;
        set_symmetric(h, site, site + 1, disorder.bonds[i]);
    }
    return h;
}

}  // namespace topopass
