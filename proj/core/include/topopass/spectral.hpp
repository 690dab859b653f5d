#pragma once

// Exact diagonalization plus the closed-form edge-state analytics and the
// five-state reduction (atom + two edge states per chain).

#include <array>

#include "topopass/model.hpp"

namespace topopass {

/// Ascending eigenvalues; column k of `vectors` belongs to `values(k)`.
struct EigenSystem {
    RealVector values;
    RealMatrix vectors;
};

/// Symmetric eigendecomposition. Each eigenvector is signed so that its
/// largest-magnitude component is positive (lowest index wins ties).
/// Throws NumericError on non-finite input.
EigenSystem eigendecompose(const RealMatrix& h);

struct EdgeStatePair {
    RealVector left;       // over the 2N sites of one chain, A/C sublattice only
    RealVector right;      // B/D sublattice only
    double norm_const;     // N_L = N_R
    double localization;   // r = J1 / J2
};

/// Closed-form left/right edge states of an isolated chain. The amplitudes
/// on cell i are N_L (-r)^(i-1) (left) and N_R (-r)^(N-i) (right).
/// Throws DomainError outside the topological phase.
EdgeStatePair analytic_edge_states(const ChainParams& params);

/// N_L = sqrt(1 - r^2) / sqrt(1 - r^(2N)).
double edge_normalization(const ChainParams& params);

/// Left/right edge coupling G = (-1)^(N+1) N_L^2 J1 r^(N-1); the two in-gap
/// levels of an isolated chain sit at +-G.
double hybridization_energy(const ChainParams& params);

struct EffectiveCouplings {
    double chain1;  // G_1: atom <-> contacted edge of chain 1
    double chain2;  // G_2
};

/// Overlap of the contact site with the edge state living on its sublattice,
/// times the bare coupling: A/C contacts see the left edge, B/D the right.
EffectiveCouplings effective_couplings(const ChainParams& params, const CouplingScenario& scenario);

using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Vector5 = Eigen::Matrix<double, 5, 1>;

enum class EdgeKet { AtomExcited, Chain1Left, Chain1Right, Chain2Left, Chain2Right };

std::string_view to_string(EdgeKet ket);

/// Reduced model in the basis
///   [atom, chain-1 contacted edge, chain-1 far edge,
///          chain-2 contacted edge, chain-2 far edge].
/// For A/C contacts that is [e, psi_L, psi_R, phi_L, phi_R].
struct FiveStateModel {
    double hybridization = 0.0;  // G
    double coupling1 = 0.0;      // G_1
    double coupling2 = 0.0;      // G_2
    std::array<EdgeKet, 5> basis{EdgeKet::AtomExcited, EdgeKet::Chain1Left, EdgeKet::Chain1Right,
                                 EdgeKet::Chain2Left, EdgeKet::Chain2Right};
    Matrix5 matrix = Matrix5::Zero();
};

Matrix5 five_state_matrix(double hybridization, double coupling1, double coupling2);

FiveStateModel five_state_model(const ChainParams& params, const CouplingScenario& scenario);

/// Full-basis images of the five reduced kets, one per column, in the order
/// of FiveStateModel::basis.
RealMatrix five_state_embedding(const ChainParams& params, const CouplingScenario& scenario);

struct MixingAngles {
    double chi;  // [0, pi/2]; tan chi = sqrt(G_1^2 + G_2^2) / |G|
    double phi;  // (-pi, pi]
};

/// Angles for which dark_state(chi, phi) is annihilated by the five-state
/// matrix. The sign of G is absorbed into phi:
///   phi = atan2(-s G_2, -s G_1),  s = sign(G) (s = +1 for G = 0),
/// so tan^2 phi = G_2^2 / G_1^2 and cos^2 chi is the atom weight.
/// Throws DomainError when G = G_1 = G_2 = 0.
MixingAngles mixing_angles(double hybridization, double coupling1, double coupling2);

struct DarkState {
    double chi;
    double phi;
    Vector5 vector;  // (cos chi, 0, sin chi cos phi, 0, sin chi sin phi)
};

DarkState dark_state(double chi, double phi);
DarkState dark_state(const FiveStateModel& model);

/// Dark state expressed on lattice sites through the analytic edge states.
RealVector embed_dark_state(const DarkState& dark, const ChainParams& params,
                            const CouplingScenario& scenario);

struct TrackedState {
    int index = -1;  // eigen-index most aligned with the state
    double energy = 0.0;
    RealVector vector;
};

/// Zero-energy state of a full spectrum: the eigenpair of minimum |E|.
/// Levels within `tolerance` of that minimum count as degenerate; the
/// returned vector is then the normalized projection of `reference` onto
/// their span (so tracking stays continuous through exact degeneracies).
/// The result is signed to have non-negative overlap with `reference`.
TrackedState select_zero_mode(const EigenSystem& spectrum, const RealVector& reference,
                              double tolerance = 1e-10);

/// Eigenpair with the largest |overlap| with `reference`, signed to match.
TrackedState follow_by_overlap(const EigenSystem& spectrum, const RealVector& reference);

/// Indices of the five smallest-|E| levels, ordered by ascending energy.
std::array<int, 5> in_gap_quintet(const EigenSystem& spectrum);

/// Lambda = |<dPsi_G/dt | Psi_0>| / (lambda_1 - lambda_0) of the full system,
/// where Psi_0 is the zero-energy state and Psi_G the next level above it.
/// dPsi_G/dtheta is a central difference with relative step 1e-6.
/// Throws DegenerateError if the gap is below 1e-14 J.
double adiabaticity_parameter(const SystemSpec& system, double dtheta_dt,
                              const DisorderRealization& disorder = {});

}  // namespace topopass
