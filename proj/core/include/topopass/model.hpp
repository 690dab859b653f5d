#pragma once

// Parameter space and single-excitation Hamiltonian of a two-level atom
// coupled at one point to each of two finite SSH chains.
//
// Energies are in units of the base hopping J, hbar = 1, and the common
// sublattice frequency is the zero of energy.

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace topopass {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

struct ChainParams {
    int cells = 4;        // unit cells per chain
    double hopping = 1.0; // base hopping J
    double theta = 0.0;   // sweep angle, [0, 2*pi]
    // Kept for completeness; chain diagonals are measured from it, so it
    // never enters the matrix.
    double reference_frequency = 0.0;

    void validate() const;
};

struct Hoppings {
    double intra;  // J1 = J(1 + cos theta), A_i <-> B_i
    double inter;  // J2 = J(1 - cos theta), B_i <-> A_{i+1}
};

Hoppings hopping_amplitudes(const ChainParams& params);

enum class Phase { Trivial, Critical, Topological };

/// Critical when |J1 - J2| <= 1e-12 * scale.
Phase classify_phase(const Hoppings& hoppings, double scale = 1.0);
Phase classify_phase(const ChainParams& params);
std::string_view to_string(Phase phase);

enum class Chain1Site { A, B };
enum class Chain2Site { C, D };

std::string_view to_string(Chain1Site site);
std::string_view to_string(Chain2Site site);

/// Where and how strongly the atom touches each chain. Cells are 1-based.
struct CouplingScenario {
    Chain1Site chain1_site = Chain1Site::A;
    int cell_p = 1;
    Chain2Site chain2_site = Chain2Site::C;
    int cell_q = 1;
    double g1 = 0.01;
    double g2 = 0.01;
    double detuning = 0.0;  // atom frequency minus sublattice frequency

    void validate(int cells) const;
};

struct SystemSpec {
    ChainParams chain;
    CouplingScenario coupling;

    void validate() const;
    SystemSpec at_theta(double theta) const;
    SystemSpec with_detuning(double detuning) const;
};

/// Site <-> index map of the (4N+1)-dimensional single-excitation basis,
/// laid out as [A1, B1, ..., AN, BN, C1, D1, ..., CN, DN, atom].
class Basis {
public:
    explicit Basis(int cells);

    int cells() const noexcept { return cells_; }
    int dim() const noexcept { return 4 * cells_ + 1; }

    int a(int cell) const { return 2 * (check(cell) - 1); }
    int b(int cell) const { return 2 * (check(cell) - 1) + 1; }
    int c(int cell) const { return 2 * cells_ + 2 * (check(cell) - 1); }
    int d(int cell) const { return 2 * cells_ + 2 * (check(cell) - 1) + 1; }
    int atom() const noexcept { return 4 * cells_; }

    int chain1_contact(const CouplingScenario& scenario) const;
    int chain2_contact(const CouplingScenario& scenario) const;

    /// "A1", "B4", "C2", "D4" or "atom".
    std::string label(int index) const;

    RealVector ket(int index) const;

private:
    int check(int cell) const;

    int cells_;
};

/// Number of hopping bonds summed over both chains: 2(2N-1).
int total_bond_count(int cells);

/// Static offsets added to the clean chains.
///
/// `onsite` has one entry per lattice site in basis order (4N entries).
/// `bonds` has 2N-1 entries for chain 1 followed by 2N-1 for chain 2;
/// bond k of a chain joins local sites k and k+1 in the order
/// A1, B1, A2, ..., so even k are intra-cell and odd k inter-cell bonds.
/// Empty vectors stand for the clean system.
struct DisorderRealization {
    std::vector<double> onsite;
    std::vector<double> bonds;

    static DisorderRealization clean(int cells);
    bool is_clean() const;
    void validate(int cells) const;
};

/// 2N x 2N Hamiltonian of one isolated, clean chain.
RealMatrix chain_hamiltonian(const ChainParams& params);

RealMatrix build_hamiltonian(const ChainParams& params, const CouplingScenario& scenario,
                             const DisorderRealization& disorder = {});
RealMatrix build_hamiltonian(const SystemSpec& system, const DisorderRealization& disorder = {});

/// The matrix a realization adds on top of the clean Hamiltonian.
RealMatrix disorder_perturbation(int cells, const DisorderRealization& disorder);

}  // namespace topopass
